#pragma once

#include <memory>
#include <string>
#include <vector>

namespace shadowtrace {

// A finite group given by its multiplication table. Elements are the indices
// 0..n-1; index order is the total order used for canonical representatives.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::string name, std::vector<std::vector<int>> table);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  // Permutations of {0,1,2} in lexicographic order, (a*b)(x) = a(b(x)).
  static FiniteGroup symmetric3();

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  // Small generating set, chosen greedily in index order.
  const std::vector<int>& generators() const { return generators_; }

  bool is_homomorphism_to(const FiniteGroup& target, const std::vector<int>& images) const;
  bool operator==(const FiniteGroup& o) const { return name_ == o.name_ && table_ == o.table_; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  int identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group(FiniteGroup g);
bool same_group(const GroupPtr& a, const GroupPtr& b);

// All homomorphisms from `source` to `target`, by brute force over images of
// the generators.
std::vector<std::vector<int>> homomorphisms(const FiniteGroup& source, const FiniteGroup& target);
std::vector<int> identity_map(const FiniteGroup& g);
bool is_automorphism(const FiniteGroup& g, const std::vector<int>& psi);
// "e" for the identity, "g<index>" otherwise.
std::string element_name(const FiniteGroup& g, int h);
std::vector<int> inverse_map(const std::vector<int>& psi);

// Orbits of x -> h x psi(h)^-1.
struct TwistedConjClasses {
  GroupPtr group;
  std::vector<int> psi;
  std::vector<int> class_of;         // element -> class index
  std::vector<int> representatives;  // class index -> minimal element

  int count() const { return static_cast<int>(representatives.size()); }
};

TwistedConjClasses twisted_conjugacy_classes(const GroupPtr& g, const std::vector<int>& psi);
TwistedConjClasses conjugacy_classes(const GroupPtr& g);

}  // namespace shadowtrace
