#pragma once

// Bratteli diagrams and the dimension-group presentation of a limit
// algebra given by a triple sequence.
//
// After adjoining an identity every embedding in the tower becomes
// unital, so the diagram of the unitized algebra falls into one of four
// shapes, keyed by type and by whether the tower itself is eventually
// unital (all z vanish along the periodic tail):
//
//   single unital      one chain, edge label l
//   single non-unital  matrix chain plus a unit chain, labels l / z / 1
//   pair unital        two matrix chains crossing with labels l / r
//   pair non-unital    two matrix chains plus a unit chain, l / r / z / 1
//
// K0 of each finite level is the free abelian group on the simple
// components with the coordinatewise positive cone, and the connecting
// map is the integer matrix whose column j lists the ranks of the image
// of a minimal idempotent of component j.  The order unit is the class
// of the identity: (n), (n, 1), (n, n) or (n, n, 1) by shape.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqspec.hpp"

namespace starlim {

enum class DiagramShape { SingleUnital, SingleNonunital, PairUnital, PairNonunital };

// Wire tags fixed by the output format.
inline std::string shape_tag(DiagramShape s) {
    switch (s) {
        case DiagramShape::SingleUnital: return "S-unital";
        case DiagramShape::SingleNonunital: return "S-nonunital";
        case DiagramShape::PairUnital: return "A-unital";
        case DiagramShape::PairNonunital: return "A-nonunital";
    }
    return "?";
}

using IntVec = std::vector<Int>;
using IntMat = std::vector<std::vector<Int>>;  // row major, rows index targets

// One level of a diagram: the component dimensions and the weighted
// edges to the next level (empty on the last emitted level).  Component
// indices are 0-based here; exporters print them 1-based.
struct BratteliLevel {
    std::size_t index = 0;  // position in the tower, 1-based
    IntVec dims;
    struct Edge {
        std::size_t from = 0;
        std::size_t to = 0;
        Int weight;
    };
    std::vector<Edge> edges;
};

struct BratteliDiagram {
    DiagramShape shape = DiagramShape::SingleUnital;
    std::vector<BratteliLevel> levels;
};

// The K0 tower: one connecting matrix per emitted embedding and the
// order unit of the unitized algebra at every emitted level.
struct DimensionGroupPresentation {
    DiagramShape shape = DiagramShape::SingleUnital;
    std::size_t start_index = 1;  // tower index of the first emitted level
    std::size_t rank = 1;         // components per level, constant per shape
    std::vector<IntMat> matrices;
    std::vector<IntVec> order_units;
};

// A tower is eventually unital exactly when the periodic tail has no
// corner summands; prefix corners only delay the stabilizing identity.
inline bool unital_tail(const TripleSequence& t) {
    for (const auto& tr : t.period)
        if (tr.z != 0) return false;
    return true;
}

// First level from which every later embedding is unital.  Only
// meaningful when unital_tail holds.
inline std::size_t unital_start(const TripleSequence& t) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < t.prefix.size(); ++i)
        if (t.prefix[i].z != 0) s = i + 2;
    return s;
}

inline DiagramShape diagram_shape(const TripleSequence& t) {
    bool u = unital_tail(t);
    if (t.type == AlgebraType::A)
        return u ? DiagramShape::PairUnital : DiagramShape::PairNonunital;
    return u ? DiagramShape::SingleUnital : DiagramShape::SingleNonunital;
}

inline std::size_t shape_rank(DiagramShape s) {
    switch (s) {
        case DiagramShape::SingleUnital: return 1;
        case DiagramShape::SingleNonunital: return 2;
        case DiagramShape::PairUnital: return 2;
        case DiagramShape::PairNonunital: return 3;
    }
    return 1;
}

// Pair towers are presented from level 2, the first honest two-component
// level; the degree-1 bottom of the sequence convention is a single
// component of either one-component type.  Unital towers start past the
// last corner so that every emitted embedding is unital.
inline std::size_t presentation_start(const TripleSequence& t) {
    std::size_t s = unital_tail(t) ? unital_start(t) : 1;
    if (t.type == AlgebraType::A && s < 2) s = 2;
    return s;
}

// Connecting matrix of one embedding step.  Column j holds the ranks of
// the embedded minimal idempotent of source component j, so the fixture
// (l, r, z) = (2, 1, 1) on the pair non-unital shape gives
// [[2,1,1],[1,2,1],[0,0,1]].
inline IntMat level_matrix(DiagramShape sh, const Triple& tr) {
    Int l(tr.l), r(tr.r), z(tr.z);
    switch (sh) {
        case DiagramShape::SingleUnital: return {{l}};
        case DiagramShape::SingleNonunital: return {{l, z}, {Int(0), Int(1)}};
        case DiagramShape::PairUnital: return {{l, r}, {r, l}};
        case DiagramShape::PairNonunital:
            return {{l, r, z}, {r, l, z}, {Int(0), Int(0), Int(1)}};
    }
    return {};
}

inline IntVec apply_matrix(const IntMat& m, const IntVec& v) {
    if (!m.empty() && m.front().size() != v.size())
        throw std::invalid_argument("bratteli: vector length does not match matrix width");
    IntVec w(m.size(), Int(0));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) w[r] += m[r][c] * v[c];
    return w;
}

// Class of the identity of the unitized algebra at tower level i.
inline IntVec order_unit(const TripleSequence& t, std::size_t i) {
    Int n = t.degree(i);
    switch (diagram_shape(t)) {
        case DiagramShape::SingleUnital: return {n};
        case DiagramShape::SingleNonunital: return {n, Int(1)};
        case DiagramShape::PairUnital: return {n, n};
        case DiagramShape::PairNonunital: return {n, n, Int(1)};
    }
    return {n};
}

// Diagram over `levels` embedding steps; zero steps emits nothing.
inline BratteliDiagram bratteli_diagram(const TripleSequence& t, std::size_t levels) {
    t.validate();
    BratteliDiagram d;
    d.shape = diagram_shape(t);
    if (levels == 0) return d;
    std::size_t s0 = presentation_start(t);
    for (std::size_t k = 0; k <= levels; ++k) {
        BratteliLevel lv;
        lv.index = s0 + k;
        Int n = t.degree(lv.index);
        switch (d.shape) {
            case DiagramShape::SingleUnital: lv.dims = {n}; break;
            case DiagramShape::SingleNonunital: lv.dims = {n, Int(1)}; break;
            case DiagramShape::PairUnital: lv.dims = {n, n}; break;
            case DiagramShape::PairNonunital: lv.dims = {n, n, Int(1)}; break;
        }
        if (k < levels) {
            const Triple& tr = t.term(lv.index);
            Int l(tr.l), r(tr.r), z(tr.z);
            auto edge = [&lv](std::size_t a, std::size_t b, const Int& w) {
                if (w > 0) lv.edges.push_back({a, b, w});
            };
            switch (d.shape) {
                case DiagramShape::SingleUnital:
                    edge(0, 0, l);
                    break;
                case DiagramShape::SingleNonunital:
                    edge(0, 0, l);
                    edge(1, 0, z);
                    edge(1, 1, Int(1));
                    break;
                case DiagramShape::PairUnital:
                    edge(0, 0, l);
                    edge(1, 1, l);
                    edge(0, 1, r);
                    edge(1, 0, r);
                    break;
                case DiagramShape::PairNonunital:
                    edge(0, 0, l);
                    edge(1, 1, l);
                    edge(0, 1, r);
                    edge(1, 0, r);
                    edge(2, 0, z);
                    edge(2, 1, z);
                    edge(2, 2, Int(1));
                    break;
            }
        }
        d.levels.push_back(std::move(lv));
    }
    return d;
}

inline DimensionGroupPresentation k0_presentation(const TripleSequence& t, std::size_t levels) {
    t.validate();
    DimensionGroupPresentation p;
    p.shape = diagram_shape(t);
    p.rank = shape_rank(p.shape);
    p.start_index = presentation_start(t);
    if (levels == 0) return p;
    for (std::size_t k = 0; k <= levels; ++k) {
        std::size_t i = p.start_index + k;
        p.order_units.push_back(order_unit(t, i));
        if (k < levels) p.matrices.push_back(level_matrix(p.shape, t.term(i)));
    }
    return p;
}

// Left-multiplication by the chain of level matrices.  Levels are local
// to the presentation: 0 is its first emitted level.
inline IntVec transport(const DimensionGroupPresentation& p, IntVec v, std::size_t from,
                        std::size_t to) {
    if (from > to || to > p.matrices.size())
        throw std::invalid_argument("bratteli: transport levels out of range");
    if (v.size() != p.rank)
        throw std::invalid_argument("bratteli: vector length does not match rank");
    for (std::size_t k = from; k < to; ++k) v = apply_matrix(p.matrices[k], v);
    return v;
}

// Finite-level positivity is the coordinatewise orthant.
inline bool coordinatewise_positive(const IntVec& v) {
    for (const auto& x : v)
        if (x < 0) return false;
    return true;
}

namespace detail {

// Step budget for the bounded-horizon limit queries.
inline std::size_t horizon_steps(const TripleSequence& t, std::size_t periods) {
    return t.prefix_len() + periods * std::max<std::size_t>(1, t.period_len());
}

}  // namespace detail

// Limit positivity: a class is positive when some later level makes it
// coordinatewise non-negative.  Returns the first such tower level at
// or after `from`, scanning at most `horizon_periods` periods.
inline std::optional<std::size_t> positive_level(const TripleSequence& t, IntVec v,
                                                 std::size_t from,
                                                 std::size_t horizon_periods = 8) {
    DiagramShape sh = diagram_shape(t);
    if (v.size() != shape_rank(sh))
        throw std::invalid_argument("bratteli: vector length does not match rank");
    if (from < presentation_start(t))
        throw std::invalid_argument("bratteli: level precedes the presentation start");
    std::size_t cap = detail::horizon_steps(t, horizon_periods);
    for (std::size_t k = 0; k <= cap; ++k) {
        if (coordinatewise_positive(v)) return from + k;
        v = apply_matrix(level_matrix(sh, t.term(from + k)), v);
    }
    return std::nullopt;
}

// Limit equality: two classes agree when some later level transports
// them to the same vector.  Same horizon convention as positive_level.
inline std::optional<std::size_t> merge_level(const TripleSequence& t, const IntVec& v,
                                              const IntVec& w, std::size_t from,
                                              std::size_t horizon_periods = 8) {
    if (v.size() != w.size())
        throw std::invalid_argument("bratteli: vectors of unequal length");
    IntVec d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i] - w[i];
    DiagramShape sh = diagram_shape(t);
    if (d.size() != shape_rank(sh))
        throw std::invalid_argument("bratteli: vector length does not match rank");
    if (from < presentation_start(t))
        throw std::invalid_argument("bratteli: level precedes the presentation start");
    std::size_t cap = detail::horizon_steps(t, horizon_periods);
    for (std::size_t k = 0; k <= cap; ++k) {
        bool zero = true;
        for (const auto& x : d) zero = zero && x == 0;
        if (zero) return from + k;
        d = apply_matrix(level_matrix(sh, t.term(from + k)), d);
    }
    return std::nullopt;
}

// Mass balance of one embedding step: the embedded dimension never
// exceeds the target dimension, with equality exactly at unital steps.
struct LevelBalance {
    std::size_t index = 0;      // embedding step, 1-based tower index
    std::size_t component = 0;  // target component
    Int embedded;
    Int target;
    bool equal = false;
};

// Balance of the emitted diagram.  The diagram describes the unitized
// tower, whose embeddings are all unital, so every row reports equality.
inline std::vector<LevelBalance> diagram_balance(const BratteliDiagram& d) {
    std::vector<LevelBalance> out;
    for (std::size_t k = 0; k + 1 < d.levels.size(); ++k) {
        const auto& cur = d.levels[k];
        const auto& nxt = d.levels[k + 1];
        for (std::size_t q = 0; q < nxt.dims.size(); ++q) {
            LevelBalance b;
            b.index = cur.index;
            b.component = q;
            b.embedded = 0;
            for (const auto& e : cur.edges)
                if (e.to == q) b.embedded += e.weight * cur.dims[e.from];
            b.target = nxt.dims[q];
            b.equal = b.embedded == b.target;
            if (b.embedded > b.target)
                throw std::logic_error("bratteli: embedded mass exceeds the target dimension");
            out.push_back(b);
        }
    }
    return out;
}

// Balance of the raw matrix components, before any identity is
// adjoined.  Each corner summand leaves a strict gap, so equality holds
// exactly at steps with z = 0.
inline std::vector<LevelBalance> matrix_level_balance(const TripleSequence& t,
                                                      std::size_t levels) {
    t.validate();
    std::vector<LevelBalance> out;
    std::size_t s0 = t.type == AlgebraType::A ? 2 : 1;
    for (std::size_t k = 0; k < levels; ++k) {
        std::size_t i = s0 + k;
        LevelBalance b;
        b.index = i;
        b.component = 0;
        b.embedded = Int(t.term(i).s()) * t.degree(i);
        b.target = t.degree(i + 1);
        b.equal = b.embedded == b.target;
        out.push_back(b);
    }
    return out;
}

// DOT export with deterministic node names L{i}V{j}, both 1-based by
// position in the emitted diagram.  Node labels are dimensions, edge
// labels multiplicities.
inline std::string export_dot(const BratteliDiagram& d) {
    std::string out = "graph bratteli {\n";
    out += "  rankdir=LR;\n";
    out += "  label=\"" + shape_tag(d.shape) + "\";\n";
    auto node = [](std::size_t level, std::size_t comp) {
        return "L" + std::to_string(level + 1) + "V" + std::to_string(comp + 1);
    };
    for (std::size_t k = 0; k < d.levels.size(); ++k)
        for (std::size_t j = 0; j < d.levels[k].dims.size(); ++j)
            out += "  " + node(k, j) + " [label=\"" + d.levels[k].dims[j].str() + "\"];\n";
    for (std::size_t k = 0; k < d.levels.size(); ++k)
        for (const auto& e : d.levels[k].edges)
            out += "  " + node(k, e.from) + " -- " + node(k + 1, e.to) + " [label=\"" +
                   e.weight.str() + "\"];\n";
    out += "}\n";
    return out;
}

// JSON mirror of the level and edge structure.  Dimensions and weights
// are strings so arbitrarily deep levels survive the trip.
inline nlohmann::json diagram_json(const BratteliDiagram& d) {
    nlohmann::json doc;
    doc["shape"] = shape_tag(d.shape);
    doc["levels"] = nlohmann::json::array();
    for (const auto& lv : d.levels) {
        nlohmann::json jl;
        jl["index"] = lv.index;
        jl["dims"] = nlohmann::json::array();
        for (const auto& n : lv.dims) jl["dims"].push_back(n.str());
        jl["edges"] = nlohmann::json::array();
        for (const auto& e : lv.edges) {
            nlohmann::json je;
            je["from"] = e.from + 1;
            je["to"] = e.to + 1;
            je["weight"] = e.weight.str();
            jl["edges"].push_back(je);
        }
        doc["levels"].push_back(jl);
    }
    return doc;
}

inline std::string export_diagram(const BratteliDiagram& d, const std::string& format) {
    if (format == "dot") return export_dot(d);
    if (format == "json") return diagram_json(d).dump(2) + "\n";
    throw std::invalid_argument("bratteli: unknown export format " + format);
}

inline nlohmann::json presentation_json(const DimensionGroupPresentation& p) {
    nlohmann::json doc;
    doc["shape"] = shape_tag(p.shape);
    doc["start"] = p.start_index;
    doc["rank"] = p.rank;
    doc["matrices"] = nlohmann::json::array();
    for (const auto& m : p.matrices) {
        nlohmann::json jm = nlohmann::json::array();
        for (const auto& row : m) {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& x : row) jr.push_back(x.str());
            jm.push_back(jr);
        }
        doc["matrices"].push_back(jm);
    }
    doc["order_units"] = nlohmann::json::array();
    for (const auto& u : p.order_units) {
        nlohmann::json ju = nlohmann::json::array();
        for (const auto& x : u) ju.push_back(x.str());
        doc["order_units"].push_back(ju);
    }
    return doc;
}

}  // namespace starlim
