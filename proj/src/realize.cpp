#include "shadowtrace/realize.hpp"

namespace shadowtrace {

namespace {

template <class T>
const T& expect_value(const Assignment& a, const char* what) {
  const T* v = std::get_if<T>(&a.value);
  if (!v) throw WorkspaceError(a.loc, 0, "'" + a.label + "' needs " + what);
  return *v;
}

template <class F>
void for_each_assignment(const Workspace& ws, F&& f) {
  // 0-cells first, then 1-cells, then 2-cells.
  for (int pass = 0; pass < 3; ++pass)
    for (const auto& a : ws.valuation) {
      const int kind = ws.sig.has_zero(a.label) ? 0 : ws.sig.one_cells.count(a.label) ? 1 : 2;
      if (kind != pass) continue;
      try {
        f(a, kind);
      } catch (const WorkspaceError&) {
        throw;
      } catch (const std::exception& e) {
        throw WorkspaceError(a.loc, 0, "'" + a.label + "': " + e.what());
      }
    }
}

template <class B>
std::pair<typename B::OneCell, typename B::OneCell> boundary(const Workspace& ws, const B& b, const Valuation<B>& v,
                                                             const std::string& gen) {
  const auto& g = ws.sig.generator(gen);
  return {realize_word(b, v, g.dom, g.src), realize_word(b, v, g.cod, g.src)};
}

template <class S>
Valuation<MatMod<S>> realize_matmod(const Workspace& ws, const MatMod<S>& b) {
  Valuation<MatMod<S>> v;
  for_each_assignment(ws, [&](const Assignment& a, int kind) {
    if (kind == 0) {
      v.zero.emplace(a.label, FinSet{a.label, expect_value<SetValue>(a, "'set N'").size});
    } else if (kind == 1) {
      const auto& d = ws.sig.one(a.label);
      const auto& rv = expect_value<RanksValue>(a, "'ranks [..]'");
      const FinSet& src = v.zero.at(d.src);
      const FinSet& tgt = v.zero.at(d.tgt);
      if (static_cast<int>(rv.ranks.size()) != src.size)
        throw TypeError("ranks need " + std::to_string(src.size) + " rows");
      std::vector<int> flat;
      for (const auto& row : rv.ranks) {
        if (static_cast<int>(row.size()) != tgt.size) throw TypeError("ranks need " + std::to_string(tgt.size) + " columns");
        flat.insert(flat.end(), row.begin(), row.end());
      }
      RankCell cell(src, tgt, flat);
      cell.label = a.label;
      v.one.emplace(a.label, b.letter(cell));
    } else {
      const auto& bv = expect_value<BlocksValue>(a, "'blocks [..] ...'");
      auto [dom, cod] = boundary(ws, b, v, a.label);
      auto ld = b.layout(dom), lc = b.layout(cod);
      const int R = dom.src().size, T = dom.tgt().size;
      if (static_cast<int>(bv.blocks.size()) != R * T)
        throw TypeError("expected " + std::to_string(R * T) + " blocks, one per (r,t)");
      std::vector<Matrix<S>> blocks;
      for (int r = 0; r < R; ++r)
        for (int t = 0; t < T; ++t) {
          const auto& rows = bv.blocks[r * T + t];
          Index m = lc.dim(r, t), n = ld.dim(r, t);
          Matrix<Rational> q = Matrix<Rational>::Zero(m, n);
          if (!rows.empty()) {
            if (static_cast<Index>(rows.size()) != m || static_cast<Index>(rows[0].size()) != n)
              throw TypeError("block (" + std::to_string(r) + "," + std::to_string(t) + ") must be " +
                              std::to_string(m) + "x" + std::to_string(n));
            for (Index i = 0; i < m; ++i)
              for (Index j = 0; j < n; ++j) q(i, j) = rows[i][j];
          }
          if constexpr (std::is_same_v<S, Integer>)
            blocks.push_back(to_integer(q));
          else
            blocks.push_back(q);
        }
      v.two.emplace(a.label, b.make(dom, cod, std::move(blocks)));
    }
  });
  return v;
}

}  // namespace

Valuation<MatMod<Integer>> realize(const Workspace& ws, const MatMod<Integer>& b) { return realize_matmod(ws, b); }
Valuation<MatMod<Rational>> realize(const Workspace& ws, const MatMod<Rational>& b) { return realize_matmod(ws, b); }

Valuation<Span> realize(const Workspace& ws, const Span& b) {
  Valuation<Span> v;
  for_each_assignment(ws, [&](const Assignment& a, int kind) {
    if (kind == 0) {
      v.zero.emplace(a.label, FinSet{a.label, expect_value<SetValue>(a, "'set N'").size});
    } else if (kind == 1) {
      const auto& d = ws.sig.one(a.label);
      const auto& sv = expect_value<SpanValue>(a, "'span LEFT.. -> RIGHT..'");
      SpanCell cell(v.zero.at(d.src), v.zero.at(d.tgt), sv.left, sv.right);
      cell.label = a.label;
      v.one.emplace(a.label, b.letter(cell));
    } else {
      const auto& mv = expect_value<ApexMapValue>(a, "'map ...'");
      auto [dom, cod] = boundary(ws, b, v, a.label);
      v.two.emplace(a.label, b.make(dom, cod, mv.map));
    }
  });
  return v;
}

GroupPtr named_group(const std::string& name) {
  static const GroupPtr trivial = make_group(FiniteGroup::trivial());
  static const GroupPtr s3 = make_group(FiniteGroup::symmetric3());
  static const std::vector<GroupPtr> cyclic = [] {
    std::vector<GroupPtr> out;
    for (int n = 1; n <= 12; ++n) out.push_back(make_group(FiniteGroup::cyclic(n)));
    return out;
  }();
  if (name == "1") return trivial;
  if (name == "S3") return s3;
  std::string digits;
  if (name.rfind("Z/", 0) == 0)
    digits = name.substr(2);
  else if (name.rfind("Z", 0) == 0)
    digits = name.substr(1);
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
    int n = std::stoi(digits);
    if (n >= 1 && n <= 12) return cyclic[static_cast<std::size_t>(n - 1)];
  }
  throw TypeError("unknown group '" + name + "'; use 1, Z<n> with n <= 12, or S3");
}

GRMatrix realize_grmatrix(const GRRows& rows, const GroupPtr& g, Index rows_hint, Index cols_hint) {
  Index m = static_cast<Index>(rows.size());
  Index n = rows.empty() ? 0 : static_cast<Index>(rows[0].size());
  if (rows.empty()) {
    m = std::max<Index>(rows_hint, 0);
    n = std::max<Index>(cols_hint, 0);
  }
  if ((rows_hint >= 0 && m != rows_hint) || (cols_hint >= 0 && n != cols_hint))
    throw TypeError("matrix is " + std::to_string(m) + "x" + std::to_string(n) + ", expected " +
                    std::to_string(rows_hint) + "x" + std::to_string(cols_hint));
  GRMatrix out(g, m, n);
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i)
    for (Index j = 0; j < n; ++j)
      for (const auto& [c, name] : rows[i][j]) {
        int h = g->identity();
        if (name != "e") {
          h = std::stoi(name.substr(1));
          if (h < 0 || h >= g->order())
            throw TypeError("element " + name + " outside " + g->name() + " (order " + std::to_string(g->order()) + ")");
        }
        out.add(h, i, j, c);
      }
  return out;
}

std::vector<int> realize_psi(const std::vector<int>& psi, const GroupPtr& g) {
  if (psi.empty()) return identity_map(*g);
  if (static_cast<int>(psi.size()) != g->order())
    throw TypeError("psi needs " + std::to_string(g->order()) + " images");
  if (!g->is_homomorphism_to(*g, psi)) throw TypeError("psi is not an endomorphism of " + g->name());
  return psi;
}

Valuation<GRBimod> realize(const Workspace& ws, const GRBimod& b, Ring ring) {
  Valuation<GRBimod> v;
  for_each_assignment(ws, [&](const Assignment& a, int kind) {
    if (kind == 0) {
      v.zero.emplace(a.label, GroupCell{named_group(expect_value<GroupValue>(a, "'group NAME'").group), ring});
    } else if (kind == 1) {
      const auto& d = ws.sig.one(a.label);
      const auto& bv = expect_value<BimoduleValue>(a, "a bimodule value");
      const GroupCell& src = v.zero.at(d.src);
      const GroupCell& tgt = v.zero.at(d.tgt);
      Bimodule m;
      switch (bv.kind) {
        case BimoduleValue::Kind::Free:
          if (src.group->order() != 1) throw TypeError("free modules start at the trivial group");
          m = GRBimod::free_module(src, tgt, bv.rank);
          break;
        case BimoduleValue::Kind::Regular:
          if (tgt.group->order() != 1) throw TypeError("regular representations end at the trivial group");
          m = GRBimod::regular_representation(src, tgt, bv.rank);
          break;
        case BimoduleValue::Kind::Twisted:
          if (src != tgt) throw TypeError("twisted units need equal endpoints");
          m = GRBimod::twisted_unit(src, realize_psi(bv.psi, src.group));
          break;
        case BimoduleValue::Kind::General: {
          if (static_cast<int>(bv.action.size()) != src.group->order())
            throw TypeError("bimodule needs one action matrix per element of " + src.group->name());
          std::vector<GRMatrix> action;
          for (const auto& rows : bv.action) action.push_back(realize_grmatrix(rows, tgt.group, bv.rank, bv.rank));
          m = Bimodule(src, tgt, bv.rank, std::move(action));
          break;
        }
      }
      m.label = a.label;
      v.one.emplace(a.label, b.letter(m));
    } else {
      const auto& gv = expect_value<GRMatrixValue>(a, "'grmatrix [..]'");
      auto [dom, cod] = boundary(ws, b, v, a.label);
      auto rd = b.realize(dom).rank, rc = b.realize(cod).rank;
      v.two.emplace(a.label, b.make(dom, cod, realize_grmatrix(gv.matrix, dom.tgt().group, rc, rd)));
    }
  });
  return v;
}

EquivariantChainComplex realize_complex(const ComplexEntry& c) {
  try {
    EquivariantChainComplex out;
    out.group = named_group(c.group);
    out.ring = c.ring;
    out.ranks = c.ranks;
    out.psi = realize_psi(c.psi, out.group);
    for (std::size_t i = 0; i < c.boundary.size(); ++i)
      out.boundary.push_back(realize_grmatrix(c.boundary[i], out.group, c.ranks[i], c.ranks[i + 1]));
    for (std::size_t i = 0; i < c.chain_map.size(); ++i)
      out.chain_map.push_back(realize_grmatrix(c.chain_map[i], out.group, c.ranks[i], c.ranks[i]));
    out.validate();
    return out;
  } catch (const WorkspaceError&) {
    throw;
  } catch (const std::exception& e) {
    throw WorkspaceError(c.loc, 0, "complex '" + c.name + "': " + e.what());
  }
}

}  // namespace shadowtrace
