// Prints both sides of nvol(conv P) = mvol(simplices of P) for a few point sets,
// and the BKK bound of the matching G system.

#include <iostream>

#include "mvol/laurent.hpp"
#include "mvol/reduction.hpp"

using namespace mvol;

namespace {

void show(const std::string& name, const std::vector<Exponent>& columns) {
    const ExponentMatrix exps(columns);
    const auto config = exps.as_points();
    std::cout << name << " (m = " << config.size() << ", n = " << config.ambient_dim() << ")\n";
    for (Engine e : {Engine::ie, Engine::cells}) {
        const auto check = verify_main_theorem(config, e, 1);
        std::cout << "  " << engine_name(e) << ": nvol = " << to_string(check.lhs)
                  << ", mvol = " << to_string(check.rhs) << (check.equal ? "  (equal)\n" : "  (DIFFERENT)\n");
    }
    const auto g = build_G(exps, build_F(exps, 1).data);
    std::cout << "  BKK bound of G = " << to_string(bkk_bound(g, Engine::ie, 0)) << "\n";
}

}  // namespace

int main() {
    show("unit square", {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    show("collinear points", {{0, 0}, {1, 1}, {2, 2}});
    show("pentagon", {{0, 0}, {2, 0}, {3, 1}, {1, 3}, {-1, 1}});
    show("tetrahedron", {{0, 0, 0}, {1, 0, 0}, {0, 2, 0}, {1, 1, 3}});
}
