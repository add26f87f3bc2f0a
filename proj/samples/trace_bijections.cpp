// Steps through phi, rho and nu3 on small inputs, then checks each map exhaustively.
#include <iostream>

#include "qpart/bijections.hpp"

int main()
{
    using namespace qpart;

    const PhiTrace p = phi_trace(5, B1Element{DistinctPartition({5, 3}), Partition{2, 2, 2, 1, 1}});
    std::cout << "phi: mu " << p.mu.str() << ", nu " << p.image.nu.str() << "\n";

    const B3Element r = rho(5, SignedDistinctSet(5, {-4, -2, -1, 0, 2, 4, 5}));
    std::cout << "rho: mu " << r.mu().str() << ", nu " << r.nu.str() << "\n";

    const Nu3Trace t = nu3_trace(2, 2, OElement{2, Partition{5, 3}});
    std::cout << "nu3: nu* " << t.nu_star.str() << ", mu " << t.mu << ", nu' " << t.nu_prime.str() << ", nu "
              << t.image.nu.str() << "\n";

    bool ok = true;
    for (const auto& name : bijection_names()) {
        Params params{{"n", 3}};
        if (name == "nu3") params = {{"max_nk", 4}};
        if (name == "durfee_split") params = {};
        const BijectionReport rep = check_bijection(name, params, 20);
        std::cout << name << ": " << rep.domain_size << " elements, " << (rep.passed() ? "ok" : "FAILED") << "\n";
        ok = ok && rep.passed();
    }
    return ok ? 0 : 1;
}
