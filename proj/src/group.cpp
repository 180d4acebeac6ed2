#include "shadowtrace/group.hpp"

#include "shadowtrace/scalar.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

namespace shadowtrace {

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw TypeError("group '" + name + "': empty table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw TypeError("group '" + name + "': table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw TypeError("group '" + name + "': entry out of range");
  }
  FiniteGroup g;
  g.name_ = std::move(name);
  g.table_ = std::move(table);
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.table_[a][x] == x && g.table_[x][a] == x;
    if (ok) e = a;
  }
  if (e < 0) throw TypeError("group '" + g.name_ + "': no identity element");
  g.identity_ = e;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
          throw TypeError("group '" + g.name_ + "': multiplication is not associative");
  g.inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.table_[a][b] == e && g.table_[b][a] == e) g.inverse_[a] = b;
    if (g.inverse_[a] < 0) throw TypeError("group '" + g.name_ + "': element without inverse");
  }
  std::vector<char> reached(n, 0);
  reached[e] = 1;
  auto closure = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a)
        if (reached[a])
          for (int s : g.generators_) {
            int p = g.table_[a][s];
            if (!reached[p]) reached[p] = 1, grew = true;
          }
    }
  };
  for (int a = 0; a < n; ++a)
    if (!reached[a]) {
      g.generators_.push_back(a);
      reached[a] = 1;
      closure();
    }
  return g;
}

FiniteGroup FiniteGroup::trivial() { return from_table("1", {{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw TypeError("cyclic group of order < 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table("Z" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table("S3", std::move(t));
}

bool FiniteGroup::is_homomorphism_to(const FiniteGroup& target, const std::vector<int>& images) const {
  if (static_cast<int>(images.size()) != order()) return false;
  for (int x : images)
    if (x < 0 || x >= target.order()) return false;
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (images[mul(a, b)] != target.mul(images[a], images[b])) return false;
  return true;
}

GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

std::vector<std::vector<int>> homomorphisms(const FiniteGroup& source, const FiniteGroup& target) {
  const auto& gens = source.generators();
  std::vector<std::vector<int>> out;
  std::vector<int> choice(gens.size(), 0);
  for (;;) {
    // extend the generator images along words by breadth-first closure
    std::vector<int> img(source.order(), -1);
    img[source.identity()] = target.identity();
    bool ok = true;
    std::vector<int> frontier{source.identity()};
    while (!frontier.empty() && ok) {
      std::vector<int> next;
      for (int a : frontier)
        for (std::size_t k = 0; k < gens.size() && ok; ++k) {
          int p = source.mul(a, gens[k]);
          int v = target.mul(img[a], choice[k]);
          if (img[p] < 0) {
            img[p] = v;
            next.push_back(p);
          } else if (img[p] != v) {
            ok = false;
          }
        }
      frontier = std::move(next);
    }
    if (ok && source.is_homomorphism_to(target, img)) out.push_back(img);
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == target.order()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

std::vector<int> identity_map(const FiniteGroup& g) {
  std::vector<int> out(g.order());
  for (int a = 0; a < g.order(); ++a) out[a] = a;
  return out;
}

bool is_automorphism(const FiniteGroup& g, const std::vector<int>& psi) {
  if (!g.is_homomorphism_to(g, psi)) return false;
  std::set<int> image(psi.begin(), psi.end());
  return static_cast<int>(image.size()) == g.order();
}

std::vector<int> inverse_map(const std::vector<int>& psi) {
  std::vector<int> out(psi.size(), -1);
  for (std::size_t a = 0; a < psi.size(); ++a) out[psi[a]] = static_cast<int>(a);
  return out;
}

TwistedConjClasses twisted_conjugacy_classes(const GroupPtr& g, const std::vector<int>& psi) {
  if (!g->is_homomorphism_to(*g, psi))
    throw TypeError("twisted classes: map is not an endomorphism of " + g->name());
  TwistedConjClasses c;
  c.group = g;
  c.psi = psi;
  c.class_of.assign(g->order(), -1);
  for (int x = 0; x < g->order(); ++x) {
    if (c.class_of[x] >= 0) continue;
    int id = c.count();
    c.representatives.push_back(x);
    std::vector<int> stack{x};
    c.class_of[x] = id;
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      for (int h = 0; h < g->order(); ++h) {
        int z = g->mul(g->mul(h, y), g->inv(psi[h]));
        if (c.class_of[z] < 0) {
          c.class_of[z] = id;
          stack.push_back(z);
        }
      }
    }
  }
  return c;
}

TwistedConjClasses conjugacy_classes(const GroupPtr& g) {
  return twisted_conjugacy_classes(g, identity_map(*g));
}

}  // namespace shadowtrace
