// starlim: isomorphism invariants, certificates and diagrams for limit
// algebras presented by triple sequences.

#include <cstddef>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "starlim/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"limit algebra classification toolkit"};
    app.require_subcommand(1);

    std::string spec_a, spec_b;
    std::string format = "dot";
    std::string seed = "c0ffee";
    std::size_t depth = 4, horizon = 10, levels = 8, max_degree = 16;
    bool verify = false, sigma_equal = false;

    auto* sc_inv = app.add_subcommand("invariants", "print the invariant profile of one algebra");
    sc_inv->add_option("spec", spec_a, "algebra spec (JSON file)")->required();

    auto* sc_cls = app.add_subcommand("classify", "decide whether two algebras are isomorphic");
    sc_cls->add_option("a", spec_a, "first algebra spec")->required();
    sc_cls->add_option("b", spec_b, "second algebra spec")->required();
    sc_cls->add_flag("--sigma-equal", sigma_equal,
                     "declare that the two opaque sigma symbols denote the same value");

    auto* sc_zig = app.add_subcommand("intertwine", "construct a commuting zig-zag certificate");
    sc_zig->add_option("a", spec_a, "first algebra spec")->required();
    sc_zig->add_option("b", spec_b, "second algebra spec")->required();
    sc_zig->add_option("--depth", depth, "down/up rounds to construct");
    sc_zig->add_option("--horizon", horizon, "scan budget per leg, in periods");
    sc_zig->add_flag("--verify", verify, "recheck the certificate and replay it at desk scale");

    auto* sc_br = app.add_subcommand("bratteli", "emit the diagram of the unitized tower");
    sc_br->add_option("spec", spec_a, "algebra spec (JSON file)")->required();
    sc_br->add_option("--levels", levels, "embedding steps to emit");
    sc_br->add_option("--format", format, "dot or json");

    auto* sc_k0 = app.add_subcommand("k0", "present the dimension group tower");
    sc_k0->add_option("spec", spec_a, "algebra spec (JSON file)")->required();
    sc_k0->add_option("--levels", levels, "embedding steps to emit");

    auto* sc_st = app.add_subcommand("selftest", "run the built-in oracle suites");
    sc_st->add_option("--seed", seed, "hex seed for the randomized suites");
    sc_st->add_option("--max-degree", max_degree, "largest matrix degree to exercise (8..64)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? starlim::kExitOk : starlim::kExitSchema;
    }

    using namespace starlim;
    return run_guarded(
        [&]() -> int {
            if (sc_inv->parsed()) return cmd_invariants(spec_a, std::cout);
            if (sc_cls->parsed()) return cmd_classify(spec_a, spec_b, sigma_equal, std::cout);
            if (sc_zig->parsed())
                return cmd_intertwine(spec_a, spec_b, depth, horizon, verify, std::cout);
            if (sc_br->parsed()) return cmd_bratteli(spec_a, levels, format, std::cout);
            if (sc_k0->parsed()) return cmd_k0(spec_a, levels, std::cout);
            if (sc_st->parsed()) return cmd_selftest(seed, max_degree, std::cout);
            return kExitSchema;
        },
        std::cerr);
}
