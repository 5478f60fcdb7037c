#pragma once

#include <string>
#include <vector>

#include "heightbound/rational.hpp"

namespace hb {

// Element of the Chow ring of P^{m_1} x ... x P^{m_k}:
// Z[l_1, ..., l_k] / (l_i^{m_i + 1}). Coefficients are stored densely,
// indexed by exponent tuples in mixed radix.
class ChowClass {
public:
    using Exponents = std::vector<int>;

    // The zero class.
    explicit ChowClass(std::vector<int> ambient);

    // sum_i coefficients[i] * l_i, the class of a multihomogeneous hypersurface
    // of multidegree `coefficients`.
    static ChowClass hypersurface(std::vector<int> ambient, const std::vector<Integer>& coefficients);
    static ChowClass monomial(std::vector<int> ambient, const Exponents& exponents, Integer coefficient = 1);

    const std::vector<int>& ambient() const { return ambient_; }
    // Coefficient of l^e; zero when some e_i exceeds m_i.
    Integer coefficient(const Exponents& e) const;
    bool is_zero() const;

    // Nonzero terms in increasing index order.
    std::vector<std::pair<Exponents, Integer>> terms() const;

    ChowClass operator+(const ChowClass& other) const;
    ChowClass operator*(const ChowClass& other) const;
    friend bool operator==(const ChowClass& a, const ChowClass& b) {
        return a.ambient_ == b.ambient_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    size_t index(const Exponents& e) const;
    Exponents exponents_at(size_t index) const;
    void require_same_ambient(const ChowClass& other) const;

    std::vector<int> ambient_;
    std::vector<Integer> coeffs_;
};

// Product of a nonempty list of classes sharing an ambient. Throws DomainError
// on an ambient mismatch or an empty list.
ChowClass chow_mul(const std::vector<ChowClass>& classes);

// Coefficient of the top class l_1^{m_1} ... l_k^{m_k}.
Integer top_coefficient(const ChowClass& c);

}  // namespace hb
