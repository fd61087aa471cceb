#include "toric/abelian_group.hpp"

#include <sstream>
#include <stdexcept>

namespace toric {

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    if (torsion_[j] < 2) throw std::invalid_argument("invariant factor must be at least 2");
    if (j > 0 && torsion_[j] % torsion_[j - 1] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain");
  }
}

Integer FgAbGroup::torsion_order() const {
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Vec FgAbGroup::reduce(const Vec& x) const {
  if (x.size() != generator_count()) throw std::invalid_argument("group element has wrong length");
  Vec y = x;
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    Integer& t = y[free_rank_ + j];
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), torsion_[j].get_mpz_t());
  }
  return y;
}

bool FgAbGroup::is_zero(const Vec& x) const { return toric::is_zero(reduce(x)); }

bool FgAbGroup::equal(const Vec& a, const Vec& b) const { return reduce(a) == reduce(b); }

IntMatrix FgAbGroup::relations() const {
  IntMatrix q(generator_count(), torsion_.size());
  for (std::size_t j = 0; j < torsion_.size(); ++j) q(free_rank_ + j, j) = torsion_[j];
  return q;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z";
    if (free_rank_ > 1) os << '^' << free_rank_;
    first = false;
  }
  for (const auto& d : torsion_) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

}  // namespace toric
