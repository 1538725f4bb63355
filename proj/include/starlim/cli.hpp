#pragma once

// Command implementations behind the binary, written against streams so
// tests can drive them in-process.  The exit codes are a contract:
//
//   0  success; for classify, the pair is isomorphic
//   1  negative answer (not isomorphic) or a failed selftest suite
//   2  schema violation in the input
//   3  undetermined (opaque sigma pair, or an exhausted search budget)

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "bratteli.hpp"
#include "cli_selftest.hpp"
#include "json_io.hpp"

namespace starlim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitUndetermined = 3;

inline Json load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("spec: cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError("spec: " + path + ": " + e.what());
    }
}

// Commands that need a presentation, not just invariants.
inline TripleSequence entry_sequence(const AlgebraEntry& e) {
    if (!std::holds_alternative<TripleSequence>(e))
        throw SchemaError("spec: this command needs a sequence presentation, not a profile");
    return std::get<TripleSequence>(e);
}

inline int cmd_invariants(const std::string& spec_path, std::ostream& out) {
    auto entry = parse_algebra_entry(load_spec(spec_path));
    out << profile_json(entry_profile(entry)).dump(2) << "\n";
    return kExitOk;
}

inline int cmd_classify(const std::string& a_path, const std::string& b_path, bool sigma_equal,
                        std::ostream& out) {
    auto a = parse_algebra_entry(load_spec(a_path));
    auto b = parse_algebra_entry(load_spec(b_path));
    Verdict v = classify_profiles(entry_profile(a), entry_profile(b), {sigma_equal});
    out << verdict_json(v).dump(2) << "\n";
    switch (v.state) {
        case Verdict::State::Isomorphic: return kExitOk;
        case Verdict::State::NotIsomorphic: return kExitNegative;
        case Verdict::State::Undetermined: return kExitUndetermined;
    }
    return kExitUndetermined;
}

inline int cmd_intertwine(const std::string& a_path, const std::string& b_path, std::size_t depth,
                          std::size_t horizon, bool verify, std::ostream& out) {
    TripleSequence a = entry_sequence(parse_algebra_entry(load_spec(a_path)));
    TripleSequence b = entry_sequence(parse_algebra_entry(load_spec(b_path)));
    Verdict v = classify_sequences(a, b);
    if (v.state != Verdict::State::Isomorphic) {
        out << verdict_json(v).dump(2) << "\n";
        return v.state == Verdict::State::NotIsomorphic ? kExitNegative : kExitUndetermined;
    }
    ZigZagOptions opts;
    opts.depth = depth;
    opts.max_periods = horizon;
    Intertwiner w;
    try {
        w = build_intertwiner(a, b, opts);
    } catch (const DepthExceeded& e) {
        out << Json{{"error", e.what()}}.dump(2) << "\n";
        return kExitUndetermined;
    }
    Json doc = intertwiner_json(w);
    if (verify) {
        verify_diagram(w.diagram);
        auto rep = replay_diagram(w.diagram);
        doc["replay"] = Json{{"checked", rep.checked}, {"skipped", rep.skipped}};
        if (w.left_bridge &&
            classify_sequences(a, w.left_bridge->pair_seq).state != Verdict::State::Isomorphic)
            throw std::logic_error("intertwine: left bridge is not equivalent to its side");
        if (w.right_bridge &&
            classify_sequences(b, w.right_bridge->pair_seq).state != Verdict::State::Isomorphic)
            throw std::logic_error("intertwine: right bridge is not equivalent to its side");
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
}

inline int cmd_bratteli(const std::string& spec_path, std::size_t levels,
                        const std::string& format, std::ostream& out) {
    TripleSequence t = entry_sequence(parse_algebra_entry(load_spec(spec_path)));
    if (format != "dot" && format != "json")
        throw SchemaError("spec: format must be dot or json");
    out << export_diagram(bratteli_diagram(t, levels), format);
    return kExitOk;
}

inline int cmd_k0(const std::string& spec_path, std::size_t levels, std::ostream& out) {
    TripleSequence t = entry_sequence(parse_algebra_entry(load_spec(spec_path)));
    out << presentation_json(k0_presentation(t, levels)).dump(2) << "\n";
    return kExitOk;
}

// Maps anything a command may throw to the exit-code contract.  Errors
// are reported as a one-line JSON object on the error stream.
template <class Fn>
int run_guarded(Fn&& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const SchemaError& e) {
        err << Json{{"error", e.what()}}.dump() << "\n";
        return kExitSchema;
    } catch (const DepthExceeded& e) {
        err << Json{{"error", e.what()}}.dump() << "\n";
        return kExitUndetermined;
    } catch (const Json::exception& e) {
        err << Json{{"error", e.what()}}.dump() << "\n";
        return kExitSchema;
    } catch (const std::invalid_argument& e) {
        err << Json{{"error", e.what()}}.dump() << "\n";
        return kExitSchema;
    }
}

}  // namespace starlim
