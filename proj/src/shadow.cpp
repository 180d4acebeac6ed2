#include "shadowtrace/shadow.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace shadowtrace {

struct ShadowPresentation::Data {
  Ring ring = Ring::Z;
  Index gens = 0;
  std::function<SparseQ()> make;

  std::once_flag rel_once;
  SparseQ rel;
  std::once_flag snf_once;
  SmithForm<Integer> zform;
  SmithForm<Rational> qform;

  const SparseQ& relations() {
    std::call_once(rel_once, [this] {
      rel = make ? make() : SparseQ(gens, 0);
      rel.prune(Rational(0), 0);
      if (rel.rows() != gens) throw TypeError("shadow relations have the wrong height");
      if (ring == Ring::Z && !is_integral(rel)) throw TypeError("non-integral relation over Z");
    });
    return rel;
  }

  // Dense relation matrix with zero and repeated columns removed.
  Matrix<Rational> reduced_relations() {
    const SparseQ& r = relations();
    std::set<std::vector<std::pair<Index, std::string>>> seen;
    std::vector<Index> keep;
    for (Index k = 0; k < r.outerSize(); ++k) {
      std::vector<std::pair<Index, std::string>> key;
      for (SparseQ::InnerIterator it(r, k); it; ++it)
        if (it.value() != 0) key.emplace_back(it.row(), to_string(it.value()));
      if (key.empty()) continue;
      if (seen.insert(key).second) keep.push_back(k);
    }
    Matrix<Rational> out = Matrix<Rational>::Zero(gens, static_cast<Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      for (SparseQ::InnerIterator it(r, keep[c]); it; ++it) out(it.row(), c) = it.value();
    return out;
  }

  void ensure_smith() {
    std::call_once(snf_once, [this] {
      Matrix<Rational> r = reduced_relations();
      if (ring == Ring::Z)
        zform = smith_normal_form(to_integer(r));
      else
        qform = smith_normal_form(r);
    });
  }
};

ShadowPresentation::ShadowPresentation() : data_(std::make_shared<Data>()) {}

ShadowPresentation ShadowPresentation::free(Ring ring, Index generators) {
  ShadowPresentation p;
  p.data_->ring = ring;
  p.data_->gens = generators;
  return p;
}

ShadowPresentation ShadowPresentation::with_relations(Ring ring, Index generators, SparseQ relations) {
  auto shared = std::make_shared<SparseQ>(std::move(relations));
  return lazy(ring, generators, [shared] { return *shared; });
}

ShadowPresentation ShadowPresentation::lazy(Ring ring, Index generators, std::function<SparseQ()> relations) {
  ShadowPresentation p = free(ring, generators);
  p.data_->make = std::move(relations);
  return p;
}

Ring ShadowPresentation::ring() const { return data_->ring; }
Index ShadowPresentation::generators() const { return data_->gens; }
const SparseQ& ShadowPresentation::relations() const { return data_->relations(); }
bool ShadowPresentation::has_relations() const {
  if (!data_->make) return false;
  return relations().nonZeros() > 0;
}

bool ShadowPresentation::in_relations(const Vector<Rational>& v) const {
  if (v.size() != generators()) throw TypeError("vector length differs from generator count");
  bool zero = true;
  for (Index i = 0; i < v.size() && zero; ++i) zero = v(i) == 0;
  if (zero) return true;
  if (!has_relations()) return false;
  data_->ensure_smith();
  if (ring() == Ring::Z) {
    Vector<Integer> w(v.size());
    for (Index i = 0; i < v.size(); ++i) {
      if (!is_integral(v(i))) return false;
      w(i) = mp::numerator(v(i));
    }
    return in_column_span(data_->zform, w);
  }
  return in_column_span(data_->qform, v);
}

Index ShadowPresentation::free_rank() const {
  if (!has_relations()) return generators();
  data_->ensure_smith();
  return generators() - (ring() == Ring::Z ? data_->zform.rank : data_->qform.rank);
}

std::vector<Integer> ShadowPresentation::torsion() const {
  std::vector<Integer> out;
  if (ring() != Ring::Z || !has_relations()) return out;
  data_->ensure_smith();
  for (const auto& d : data_->zform.invariant_factors())
    if (d > 1) out.push_back(d);
  return out;
}

std::string ShadowPresentation::describe() const {
  std::string out = std::string(ring_name(ring())) + "^" + std::to_string(free_rank());
  for (const auto& d : torsion()) out += " + Z/" + to_string(d);
  return out;
}

bool operator==(const ShadowPresentation& a, const ShadowPresentation& b) {
  if (a.data_ == b.data_) return true;
  return a.ring() == b.ring() && a.generators() == b.generators() &&
         sparse_equal(a.relations(), b.relations());
}

ShadowMorphism::ShadowMorphism(ShadowPresentation src, ShadowPresentation tgt, SparseQ map)
    : src_(std::move(src)), tgt_(std::move(tgt)), map_(std::move(map)) {
  if (map_.rows() != tgt_.generators() || map_.cols() != src_.generators())
    throw TypeError("shadow morphism: matrix is " + std::to_string(map_.rows()) + "x" +
                    std::to_string(map_.cols()) + ", expected " + std::to_string(tgt_.generators()) + "x" +
                    std::to_string(src_.generators()));
  map_.prune(Rational(0), 0);
  if (src_.ring() == Ring::Z && tgt_.ring() == Ring::Z && !is_integral(map_))
    throw TypeError("shadow morphism between Z-presentations has non-integral entries");
}

ShadowMorphism ShadowMorphism::identity(const ShadowPresentation& p) {
  return ShadowMorphism(p, p, sparse_identity(p.generators()));
}

ShadowMorphism ShadowMorphism::zero(const ShadowPresentation& src, const ShadowPresentation& tgt) {
  return ShadowMorphism(src, tgt, SparseQ(tgt.generators(), src.generators()));
}

bool ShadowMorphism::descends() const {
  if (!src_.has_relations()) return true;
  SparseQ image = map_ * src_.relations();
  Matrix<Rational> dense(image);
  for (Index j = 0; j < dense.cols(); ++j)
    if (!tgt_.in_relations(dense.col(j))) return false;
  return true;
}

bool ShadowMorphism::equals(const ShadowMorphism& other) const {
  if (src_.generators() != other.src_.generators() || tgt_.generators() != other.tgt_.generators())
    return false;
  if (src_.ring() != other.src_.ring() || tgt_.ring() != other.tgt_.ring()) return false;
  SparseQ diff = map_ - other.map_;
  diff.prune(Rational(0), 0);
  if (diff.nonZeros() == 0) return true;
  if (!tgt_.has_relations()) return false;
  for (Index k = 0; k < diff.outerSize(); ++k) {
    Vector<Rational> col = Vector<Rational>::Zero(diff.rows());
    bool any = false;
    for (SparseQ::InnerIterator it(diff, k); it; ++it) {
      col(it.row()) = it.value();
      any = true;
    }
    if (any && !tgt_.in_relations(col)) return false;
  }
  return true;
}

ShadowMorphism operator*(const ShadowMorphism& g, const ShadowMorphism& f) {
  if (g.src_.generators() != f.tgt_.generators() || g.src_.ring() != f.tgt_.ring())
    throw TypeError("shadow morphism composition: " + std::to_string(f.tgt_.generators()) + " generators over " +
                    ring_name(f.tgt_.ring()) + " do not match " + std::to_string(g.src_.generators()) + " over " +
                    ring_name(g.src_.ring()));
  SparseQ m = g.map_ * f.map_;
  return ShadowMorphism(f.src_, g.tgt_, std::move(m));
}

ShadowMorphism operator+(const ShadowMorphism& a, const ShadowMorphism& b) {
  if (a.map_.rows() != b.map_.rows() || a.map_.cols() != b.map_.cols())
    throw TypeError("shadow morphism sum: shape mismatch");
  SparseQ m = a.map_ + b.map_;
  return ShadowMorphism(a.src_, a.tgt_, std::move(m));
}

ShadowMorphism operator-(const ShadowMorphism& a, const ShadowMorphism& b) {
  if (a.map_.rows() != b.map_.rows() || a.map_.cols() != b.map_.cols())
    throw TypeError("shadow morphism difference: shape mismatch");
  SparseQ m = a.map_ - b.map_;
  return ShadowMorphism(a.src_, a.tgt_, std::move(m));
}

ShadowMorphism operator*(const Rational& c, const ShadowMorphism& a) {
  SparseQ m = a.map_ * c;
  return ShadowMorphism(a.src_, a.tgt_, std::move(m));
}

ShadowPresentation retag(const ShadowPresentation& p, Ring ring) {
  if (p.ring() == ring) return p;
  if (!p.has_relations()) return ShadowPresentation::free(ring, p.generators());
  return ShadowPresentation::lazy(ring, p.generators(), [p] { return p.relations(); });
}

ShadowMorphism retag(const ShadowMorphism& f, Ring src_ring, Ring tgt_ring) {
  return ShadowMorphism(retag(f.src(), src_ring), retag(f.tgt(), tgt_ring), f.matrix());
}

}  // namespace shadowtrace
