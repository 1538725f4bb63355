#pragma once

// JSON wire formats.  Every number that can outgrow a machine word
// (degrees, rationals, supernatural exponents) travels as a string, so
// documents survive arbitrarily deep towers.  Parsing throws
// SchemaError with a field diagnostic on any malformed document.
//
// An algebra entry is an object with exactly one of
//   "sequence": {"type", "char", "prefix", "period", "first_convention"?}
//   "profile":  {"type", "char", "density", "pi_s", "delta",
//                "symmetry"?, "sigma"?, "pi_c"?}
// Triples are [l, r, z] arrays; supernatural numbers are either the
// text form "2^3 * 5^inf" or {"finite": {"2": 3}, "infinite": [5]};
// sigma is "0", a positive rational string, or {"opaque": "name"}.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "classify.hpp"
#include "intertwine.hpp"

namespace starlim {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("spec: missing field '") + key + "'");
    return *it;
}

inline Int parse_int(const Json& j, const char* where) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw SchemaError(std::string("spec: ") + where + " must be an integer or integer string");
}

inline std::uint64_t parse_u64(const Json& j, const char* where) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
        return j.get<std::uint64_t>();
    throw SchemaError(std::string("spec: ") + where + " must be a non-negative integer");
}

}  // namespace detail

inline Rat parse_rational(const Json& j, const char* where = "value") {
    try {
        if (j.is_number_integer()) return Rat(j.get<long long>());
        if (j.is_string()) return rat_parse(j.get<std::string>());
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
    }
    throw SchemaError(std::string("spec: ") + where + " must be a rational string like \"2/3\"");
}

inline Supernatural parse_supernatural(const Json& j, const char* where = "supernatural") {
    if (j.is_string()) return sn_parse(j.get<std::string>());
    if (j.is_object()) {
        std::map<std::uint64_t, std::uint64_t> fin;
        std::set<std::uint64_t> inf;
        if (auto it = j.find("finite"); it != j.end()) {
            if (!it->is_object())
                throw SchemaError(std::string("spec: ") + where + ".finite must be an object");
            for (const auto& [key, val] : it->items()) {
                std::uint64_t p = 0;
                try {
                    p = std::stoull(key);
                } catch (const std::exception&) {
                    throw SchemaError(std::string("spec: ") + where + ".finite key '" + key +
                                      "' is not a prime");
                }
                fin[p] = detail::parse_u64(val, "finite exponent");
            }
        }
        if (auto it = j.find("infinite"); it != j.end()) {
            if (!it->is_array())
                throw SchemaError(std::string("spec: ") + where + ".infinite must be an array");
            for (const auto& p : *it) inf.insert(detail::parse_u64(p, "infinite prime"));
        }
        return sn_make(std::move(fin), std::move(inf));
    }
    throw SchemaError(std::string("spec: ") + where +
                      " must be a text form or a {finite, infinite} object");
}

inline AlgebraType parse_type(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "O") return AlgebraType::O;
        if (s == "S") return AlgebraType::S;
        if (s == "A") return AlgebraType::A;
    }
    throw SchemaError("spec: type must be \"O\", \"S\" or \"A\"");
}

inline Triple parse_triple(const Json& j) {
    if (!j.is_array() || j.size() != 3)
        throw SchemaError("spec: each triple must be an [l, r, z] array");
    return Triple{detail::parse_int(j[0], "l"), detail::parse_int(j[1], "r"),
                  detail::parse_int(j[2], "z")};
}

inline TripleSequence parse_sequence(const Json& j) {
    if (!j.is_object()) throw SchemaError("spec: sequence must be an object");
    TripleSequence t;
    t.type = parse_type(detail::field(j, "type"));
    if (auto it = j.find("char"); it != j.end())
        t.characteristic = static_cast<std::uint32_t>(detail::parse_u64(*it, "char"));
    const Json& per = detail::field(j, "period");
    if (!per.is_array() || per.empty())
        throw SchemaError("spec: period must be a non-empty array of triples");
    if (auto it = j.find("prefix"); it != j.end()) {
        if (!it->is_array()) throw SchemaError("spec: prefix must be an array of triples");
        for (const auto& x : *it) t.prefix.push_back(parse_triple(x));
    }
    for (const auto& x : per) t.period.push_back(parse_triple(x));
    if (auto it = j.find("first_convention"); it != j.end()) {
        if (!it->is_boolean()) throw SchemaError("spec: first_convention must be a boolean");
        t.first_convention = it->get<bool>();
    }
    t.validate();
    return t;
}

inline std::string density_tag(DensityType d) {
    switch (d) {
        case DensityType::Sparse: return "sparse";
        case DensityType::Dense: return "dense";
        case DensityType::Pure: return "pure";
    }
    return "?";
}

inline DensityType parse_density(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "sparse") return DensityType::Sparse;
        if (s == "dense") return DensityType::Dense;
        if (s == "pure") return DensityType::Pure;
    }
    throw SchemaError("spec: density must be \"sparse\", \"dense\" or \"pure\"");
}

inline std::string symmetry_tag(SymmetryType s) {
    switch (s) {
        case SymmetryType::OneSided: return "one-sided";
        case SymmetryType::Symmetric: return "symmetric";
        case SymmetryType::WeaklyNonsymmetric: return "weakly-nonsymmetric";
        case SymmetryType::StronglyNonsymmetric: return "strongly-nonsymmetric";
    }
    return "?";
}

inline SymmetryType parse_symmetry(const Json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "one-sided") return SymmetryType::OneSided;
        if (s == "symmetric") return SymmetryType::Symmetric;
        if (s == "weakly-nonsymmetric") return SymmetryType::WeaklyNonsymmetric;
        if (s == "strongly-nonsymmetric") return SymmetryType::StronglyNonsymmetric;
    }
    throw SchemaError("spec: unknown symmetry class");
}

inline Json sigma_json(const Sigma& s) {
    switch (s.kind) {
        case Sigma::Kind::Zero: return "0";
        case Sigma::Kind::Positive: return rat_str(s.value);
        case Sigma::Kind::Opaque: return Json{{"opaque", s.symbol}};
    }
    return "0";
}

inline Sigma parse_sigma(const Json& j) {
    if (j.is_object()) {
        const Json& name = detail::field(j, "opaque");
        if (!name.is_string()) throw SchemaError("spec: sigma.opaque must be a name");
        return Sigma::opaque(name.get<std::string>());
    }
    Rat v = parse_rational(j, "sigma");
    if (v == 0) return Sigma::zero();
    if (v < 0) throw SchemaError("spec: sigma must be non-negative");
    return Sigma::positive(v);
}

inline InvariantProfile parse_profile(const Json& j) {
    if (!j.is_object()) throw SchemaError("spec: profile must be an object");
    InvariantProfile p;
    p.type = parse_type(detail::field(j, "type"));
    if (auto it = j.find("char"); it != j.end())
        p.characteristic = static_cast<std::uint32_t>(detail::parse_u64(*it, "char"));
    p.density = parse_density(detail::field(j, "density"));
    p.pi_s = parse_supernatural(detail::field(j, "pi_s"), "pi_s");
    p.delta = parse_rational(detail::field(j, "delta"), "delta");
    if ((p.density == DensityType::Sparse) != (p.delta == 0))
        throw SchemaError("spec: delta must be zero exactly in the sparse case");
    if (auto it = j.find("symmetry"); it != j.end()) p.symmetry = parse_symmetry(*it);
    if (auto it = j.find("sigma"); it != j.end()) p.sigma = parse_sigma(*it);
    if (auto it = j.find("pi_c"); it != j.end()) p.pi_c = parse_supernatural(*it, "pi_c");
    if (p.type == AlgebraType::A && !p.symmetry)
        throw SchemaError("spec: pair profiles need a symmetry class");
    if (p.type != AlgebraType::A && (p.symmetry || p.pi_c))
        throw SchemaError("spec: symmetry data only applies to pair profiles");
    if (p.symmetry && p.symmetry != SymmetryType::Symmetric && !p.pi_c)
        throw SchemaError("spec: non-symmetric pair profiles need pi_c");
    if (p.symmetry == SymmetryType::StronglyNonsymmetric && p.sigma.kind == Sigma::Kind::Zero)
        throw SchemaError("spec: strongly non-symmetric profiles need a sigma value or symbol");
    return p;
}

inline Json sequence_json(const TripleSequence& t) {
    Json j;
    switch (t.type) {
        case AlgebraType::O: j["type"] = "O"; break;
        case AlgebraType::S: j["type"] = "S"; break;
        case AlgebraType::A: j["type"] = "A"; break;
    }
    j["char"] = t.characteristic;
    auto triples = [](const std::vector<Triple>& v) {
        Json a = Json::array();
        for (const auto& t : v) a.push_back({t.l.str(), t.r.str(), t.z.str()});
        return a;
    };
    j["prefix"] = triples(t.prefix);
    j["period"] = triples(t.period);
    if (!t.first_convention) j["first_convention"] = false;
    return j;
}

inline Json profile_json(const InvariantProfile& p) {
    Json j;
    switch (p.type) {
        case AlgebraType::O: j["type"] = "O"; break;
        case AlgebraType::S: j["type"] = "S"; break;
        case AlgebraType::A: j["type"] = "A"; break;
    }
    j["char"] = p.characteristic;
    j["density"] = density_tag(p.density);
    j["pi_s"] = sn_str(p.pi_s);
    j["delta"] = rat_str(p.delta);
    if (p.symmetry) {
        j["symmetry"] = symmetry_tag(*p.symmetry);
        j["sigma"] = sigma_json(p.sigma);
    }
    if (p.pi_c) j["pi_c"] = sn_str(*p.pi_c);
    return j;
}

// An algebra entry carries either a presentation or a ready profile.
using AlgebraEntry = std::variant<TripleSequence, InvariantProfile>;

inline AlgebraEntry parse_algebra_entry(const Json& j) {
    if (!j.is_object()) throw SchemaError("spec: algebra entry must be an object");
    bool has_seq = j.contains("sequence");
    bool has_prof = j.contains("profile");
    if (has_seq == has_prof)
        throw SchemaError("spec: algebra entry needs exactly one of 'sequence' or 'profile'");
    if (has_seq) return parse_sequence(j["sequence"]);
    return parse_profile(j["profile"]);
}

inline InvariantProfile entry_profile(const AlgebraEntry& e) {
    if (std::holds_alternative<TripleSequence>(e))
        return std::get<TripleSequence>(e).invariant_profile();
    return std::get<InvariantProfile>(e);
}

inline Json verdict_json(const Verdict& v) {
    Json j;
    switch (v.state) {
        case Verdict::State::Isomorphic: j["isomorphic"] = true; break;
        case Verdict::State::NotIsomorphic: j["isomorphic"] = false; break;
        case Verdict::State::Undetermined: j["isomorphic"] = "undetermined"; break;
    }
    if (v.failed) j["failed"] = condition_tag(*v.failed);
    if (v.alpha) j["alpha"] = rat_str(*v.alpha);
    if (v.beta) j["beta"] = rat_str(*v.beta);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline Json triple_json(const Triple& t) {
    return Json::array({t.l.str(), t.r.str(), t.z.str()});
}

inline Json leg_json(const DiagramLeg& leg) {
    Json j;
    j["from"] = leg.from;
    j["to"] = leg.to;
    j["sig"] = triple_json(leg.sig);
    j["a"] = leg.a.str();
    j["b"] = leg.b.str();
    return j;
}

inline Json zigzag_json(const IntertwinerDiagram& d) {
    Json j;
    j["left"] = sequence_json(d.left);
    j["right"] = sequence_json(d.right);
    j["dropped_left"] = d.dropped_left;
    j["dropped_right"] = d.dropped_right;
    j["alpha"] = rat_str(d.alpha);
    if (d.beta) j["beta"] = rat_str(*d.beta);
    j["symmetric_mode"] = d.symmetric_mode;
    j["j0"] = d.j0;
    j["i1"] = d.i1;
    j["a0"] = d.a0.str();
    j["b0"] = d.b0.str();
    j["down"] = Json::array();
    for (const auto& leg : d.down) j["down"].push_back(leg_json(leg));
    j["up"] = Json::array();
    for (const auto& leg : d.up) j["up"].push_back(leg_json(leg));
    return j;
}

inline Json bridge_json(const IntertypeBridge& b) {
    Json j;
    j["side_type"] = b.side_type == AlgebraType::O ? "O" : "S";
    j["pair_sequence"] = sequence_json(b.pair_seq);
    j["anchors"] = b.anchors;
    j["eta"] = Json::array();
    for (const auto& t : b.eta) j["eta"].push_back(triple_json(t));
    j["zeta"] = Json::array();
    for (const auto& t : b.zeta) j["zeta"].push_back(triple_json(t));
    return j;
}

inline Json intertwiner_json(const Intertwiner& w) {
    Json j;
    if (w.left_bridge) j["left_bridge"] = bridge_json(*w.left_bridge);
    if (w.right_bridge) j["right_bridge"] = bridge_json(*w.right_bridge);
    j["diagram"] = zigzag_json(w.diagram);
    return j;
}

}  // namespace starlim
