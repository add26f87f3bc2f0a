// Checks Euler's odd/distinct identity (-q;q)_inf = 1/(q;q^2)_inf, stated in the expression language.
#include <iostream>

#include "qpart/dsl.hpp"

int main()
{
    using namespace qpart;
    const int trunc = 50;
    const MultiSeries lhs = dsl::eval("poch(-q, 1, inf)", {}, trunc);
    const MultiSeries rhs = dsl::eval("poch(q, 2, inf)^(-1)", {}, trunc);
    if (auto m = first_mismatch(lhs, rhs)) {
        std::cout << "differ at q^" << m->exponent << "\n";
        return 1;
    }
    std::cout << "equal below q^" << trunc << ": " << lhs << "\n";

    try {
        dsl::parse("poch(q, 1,");
    } catch (const ParseError& e) {
        std::cout << "parse error reported at " << e.line() << ":" << e.column() << "\n";
    }
    return 0;
}
