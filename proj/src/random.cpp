#include "dysongraph/random.hpp"

namespace dysongraph {

std::uint64_t probability_threshold(const Rational& p) {
    constexpr std::uint64_t full = std::uint64_t{1} << 53;
    if (p <= 0) return 0;
    if (p >= 1) return full;
    Integer scaled = p.get_num() * Integer(static_cast<unsigned long>(full));
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), p.get_den().get_mpz_t());
    return q.get_ui();
}

}  // namespace dysongraph
