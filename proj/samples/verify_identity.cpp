// Expands both sides of the trivariate identity and prints a few coefficients.
#include <iostream>

#include "qpart/identities.hpp"

int main()
{
    using namespace qpart;
    const int trunc = 12;
    const VerifyReport r = verify("nu3", {}, trunc);
    std::cout << "nu3 below q^" << trunc << ": " << (r.equal ? "equal" : "different") << "\n";

    const MultiSeries lhs = build_side("nu3", Side::lhs, {}, trunc);
    std::cout << lhs << "\n";

    // The same sides specialized at x = 1, y = -z.
    const MultiSeries nu1 = lhs.substitute(Aux::x, 1, Mono{}).substitute(Aux::y, -1, Mono::of(Aux::z));
    std::cout << "x=1, y=-z: " << nu1 << "\n";
    return r.equal ? 0 : 1;
}
