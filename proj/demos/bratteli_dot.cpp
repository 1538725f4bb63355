// Prints the Bratteli diagram of a non-unital pair tower as Graphviz
// source on stdout, followed by the dimension group presentation as a
// comment block. Pipe it into dot for a rendering:
//
//   ./demo_bratteli | dot -Tsvg -o tower.svg

#include <iostream>

#include "starlim/bratteli.hpp"

using namespace starlim;

int main() {
    TripleSequence t;
    t.type = AlgebraType::A;
    t.period = {{2, 1, 1}};
    t.first_convention = false;
    t.validate();

    BratteliDiagram d = bratteli_diagram(t, 6);
    std::cout << export_dot(d);

    auto p = k0_presentation(t, 6);
    std::cout << "\n// dimension group data (" << shape_tag(p.shape) << ", rank " << p.rank
              << ", from stage " << p.start_index << ")\n";
    for (std::size_t i = 0; i < p.matrices.size(); ++i) {
        std::cout << "// step " << p.start_index + i << ":";
        for (const auto& row : p.matrices[i]) {
            std::cout << "  [";
            for (std::size_t j = 0; j < row.size(); ++j)
                std::cout << (j ? " " : "") << row[j];
            std::cout << "]";
        }
        std::cout << "  order unit (";
        const auto& u = p.order_units[i];
        for (std::size_t j = 0; j < u.size(); ++j) std::cout << (j ? "," : "") << u[j];
        std::cout << ")\n";
    }
    return 0;
}
