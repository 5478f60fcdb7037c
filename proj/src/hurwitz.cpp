#include "heightbound/hurwitz.hpp"

#include <cctype>

#include "heightbound/errors.hpp"

namespace hb {

CheckedProfile validate_profile(const Integer& degree, const RamificationProfile& profile) {
    if (degree < 1) throw DomainError("covering degree must be positive");
    CheckedProfile out{degree, profile, {}, 0};
    for (const auto& b : profile.branches) {
        Integer total = 0, ram = 0;
        for (const auto& f : b.fibers) {
            if (f.index < 1) throw DomainError("branch '" + b.label + "': ramification index must be >= 1");
            if (f.count < 1) throw DomainError("branch '" + b.label + "': preimage count must be >= 1");
            total += f.index * f.count;
            ram += (f.index - 1) * f.count;
        }
        if (total != degree)
            throw DomainError("branch '" + b.label + "': fiber has total multiplicity " + total.get_str() +
                              ", expected degree " + degree.get_str());
        out.branches.push_back({b.label, ram});
        out.total_ramification += ram;
    }
    return out;
}

Integer hurwitz_genus(const Integer& degree, const Integer& base_genus, const RamificationProfile& profile) {
    if (base_genus < 0) throw DomainError("base genus must be nonnegative");
    CheckedProfile checked = validate_profile(degree, profile);
    Integer euler = degree * (2 - 2 * base_genus) - checked.total_ramification;  // 2 - 2g
    if (euler % 2 != 0)
        throw DomainError("inconsistent profile: 2 - 2g = " + euler.get_str() + " is odd");
    Integer g = (2 - euler) / 2;
    if (g < 0) throw DomainError("inconsistent profile: negative genus " + g.get_str());
    return g;
}

std::string LinearInN::to_string() const {
    if (slope == 0) return constant.get_str();
    std::string out;
    if (slope == 1) out = "n";
    else if (slope == -1) out = "-n";
    else out = slope.get_str() + "n";
    if (constant > 0) out += "+" + constant.get_str();
    else if (constant < 0) out += constant.get_str();
    return out;
}

LinearInN parse_linear_in_n(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty expression in n");
    LinearInN out;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ParseError("malformed expression in n: '" + std::string(text) + "'");
        }
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        std::string digits = s.substr(start, i - start);
        bool has_n = i < s.size() && s[i] == 'n';
        if (has_n) ++i;
        if (digits.empty() && !has_n) throw ParseError("malformed expression in n: '" + std::string(text) + "'");
        Integer v = digits.empty() ? Integer(1) : Integer(digits);
        if (sign < 0) v = -v;
        (has_n ? out.slope : out.constant) += v;
    }
    return out;
}

RamificationProfile ProfileTemplate::instantiate(const Integer& n) const {
    if (n < 1) throw DomainError("family parameter n must be >= 1");
    RamificationProfile p;
    for (const auto& b : branches) {
        BranchEntry e{b.label, {}};
        for (const auto& f : b.fibers) {
            Integer count = f.count.at(n);
            if (count == 0) continue;  // e.g. 6n-6 unramified preimages at n = 1
            e.fibers.push_back({f.index.at(n), count});
        }
        p.branches.push_back(std::move(e));
    }
    return p;
}

ProfileTemplate family_profile_template() {
    auto L = [](std::string_view s) { return parse_linear_in_n(s); };
    ProfileTemplate t;
    t.degree = L("6n");
    t.base_genus = 0;
    for (int i = 1; i <= 4; ++i)
        t.branches.push_back({"beta" + std::to_string(i), {{L("2"), L("2n")}, {L("1"), L("2n")}}});
    t.branches.push_back({"1", {{L("n"), L("6")}}});
    for (int j = 1; j <= 3; ++j)
        t.branches.push_back({"alpha" + std::to_string(j) + "^n+1", {{L("2"), L("3")}, {L("1"), L("6n-6")}}});
    t.branches.push_back({"infinity", {{L("6n"), L("1")}}});
    return t;
}

}  // namespace hb
