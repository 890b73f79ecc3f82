#include <dhull/cfrac.hpp>

namespace dhull {

namespace {

void check_ratio(Rational r, const char* who) {
    if (r.num < 1 || r.den < 1)
        throw std::domain_error(std::string(who) + ": ratio must be positive");
    const Coord limit = Coord(1) << 62;
    if (r.num > limit || r.den > limit)
        throw std::domain_error(std::string(who) + ": ratio exceeds budget");
}

} // namespace

std::vector<Convergent> convergents(Rational ratio) {
    check_ratio(ratio, "convergents");
    std::vector<Convergent> out;
    Coord r_prev = ratio.num, r_cur = ratio.den;
    LatticeVector p_prev2{1, 0}, p_prev1{0, 1};
    for (int i = 0; r_cur != 0; ++i) {
        Coord q = r_prev / r_cur;
        Coord rem = r_prev % r_cur;
        LatticeVector p = q * p_prev1 + p_prev2;
        out.push_back({i, q, p});
        r_prev = r_cur;
        r_cur = rem;
        p_prev2 = p_prev1;
        p_prev1 = p;
    }
    return out;
}

std::vector<Convergent> geom_gcd(Rational ratio) {
    check_ratio(ratio, "geom_gcd");
    const LatticeVector target{ratio.den, ratio.num};
    std::vector<Convergent> out;
    LatticeVector prev2{1, 0}, prev1{0, 1};
    Wide side2 = cross(target, prev2); // negative: (1,0) is below the ray
    Wide side1 = cross(target, prev1); // positive: (0,1) is above the ray
    for (int i = 0;; ++i) {
        Wide mag2 = side2 < 0 ? -side2 : side2;
        Wide mag1 = side1 < 0 ? -side1 : side1;
        Coord steps = Coord(mag2 / mag1);
        LatticeVector corner = prev2 + steps * prev1;
        out.push_back({i, steps, corner});
        if (mag2 % mag1 == 0) {
            // corner landed exactly on the target ray: it is (b, a) itself
            // and the expansion is complete.
            return out;
        }
        Wide side = side2 + Wide(steps) * side1;
        prev2 = prev1;
        prev1 = corner;
        side2 = side1;
        side1 = side;
    }
}

} // namespace dhull
