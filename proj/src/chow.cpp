#include "heightbound/chow.hpp"

#include <algorithm>

#include "heightbound/errors.hpp"

namespace hb {

ChowClass::ChowClass(std::vector<int> ambient) : ambient_(std::move(ambient)) {
    if (ambient_.empty()) throw DomainError("Chow class needs at least one projective factor");
    size_t size = 1;
    for (int m : ambient_) {
        if (m < 0) throw DomainError("projective factor of negative dimension");
        size *= static_cast<size_t>(m + 1);
    }
    coeffs_.assign(size, Integer(0));
}

ChowClass ChowClass::hypersurface(std::vector<int> ambient, const std::vector<Integer>& coefficients) {
    ChowClass c(std::move(ambient));
    if (coefficients.size() != c.ambient_.size())
        throw DomainError("hypersurface class: one coefficient per factor required");
    for (size_t i = 0; i < coefficients.size(); ++i) {
        if (c.ambient_[i] == 0) continue;  // l_i = 0 on a point factor
        Exponents e(c.ambient_.size(), 0);
        e[i] = 1;
        c.coeffs_[c.index(e)] += coefficients[i];
    }
    return c;
}

ChowClass ChowClass::monomial(std::vector<int> ambient, const Exponents& exponents, Integer coefficient) {
    ChowClass c(std::move(ambient));
    if (exponents.size() != c.ambient_.size()) throw DomainError("monomial: exponent tuple has wrong length");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 0) throw DomainError("monomial: negative exponent");
        if (exponents[i] > c.ambient_[i]) return c;
    }
    c.coeffs_[c.index(exponents)] = std::move(coefficient);
    return c;
}

size_t ChowClass::index(const Exponents& e) const {
    size_t idx = 0;
    for (size_t i = 0; i < ambient_.size(); ++i) idx = idx * static_cast<size_t>(ambient_[i] + 1) + static_cast<size_t>(e[i]);
    return idx;
}

ChowClass::Exponents ChowClass::exponents_at(size_t idx) const {
    Exponents e(ambient_.size());
    for (size_t i = ambient_.size(); i-- > 0;) {
        auto base = static_cast<size_t>(ambient_[i] + 1);
        e[i] = static_cast<int>(idx % base);
        idx /= base;
    }
    return e;
}

Integer ChowClass::coefficient(const Exponents& e) const {
    if (e.size() != ambient_.size()) throw DomainError("coefficient: exponent tuple has wrong length");
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 || e[i] > ambient_[i]) return 0;
    return coeffs_[index(e)];
}

bool ChowClass::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
}

std::vector<std::pair<ChowClass::Exponents, Integer>> ChowClass::terms() const {
    std::vector<std::pair<Exponents, Integer>> out;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) out.emplace_back(exponents_at(i), coeffs_[i]);
    return out;
}

void ChowClass::require_same_ambient(const ChowClass& other) const {
    if (ambient_ != other.ambient_) throw DomainError("Chow classes live in different ambients");
}

ChowClass ChowClass::operator+(const ChowClass& other) const {
    require_same_ambient(other);
    ChowClass r = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += other.coeffs_[i];
    return r;
}

ChowClass ChowClass::operator*(const ChowClass& other) const {
    require_same_ambient(other);
    ChowClass r(ambient_);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        Exponents ei = exponents_at(i);
        for (size_t j = 0; j < other.coeffs_.size(); ++j) {
            if (other.coeffs_[j] == 0) continue;
            Exponents ej = other.exponents_at(j);
            bool vanishes = false;
            for (size_t k = 0; k < ei.size(); ++k) {
                ej[k] += ei[k];
                if (ej[k] > ambient_[k]) vanishes = true;  // l_k^{m_k+1} = 0
            }
            if (!vanishes) r.coeffs_[r.index(ej)] += coeffs_[i] * other.coeffs_[j];
        }
    }
    return r;
}

std::string ChowClass::to_string() const {
    std::string out;
    for (const auto& [e, c] : terms()) {
        std::string mono;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "l" + std::to_string(k + 1);
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        Integer mag = abs(c);
        std::string term = mono.empty() ? mag.get_str() : (mag == 1 ? mono : mag.get_str() + "*" + mono);
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

ChowClass chow_mul(const std::vector<ChowClass>& classes) {
    if (classes.empty()) throw DomainError("chow_mul: empty product");
    ChowClass acc = classes.front();
    for (size_t i = 1; i < classes.size(); ++i) acc = acc * classes[i];
    return acc;
}

Integer top_coefficient(const ChowClass& c) { return c.coefficient(c.ambient()); }

}  // namespace hb
