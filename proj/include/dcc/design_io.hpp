#pragma once

// JSON design files:
//   { "n_spins": int, "j_max_twice": int,
//     "points": [ { "q": [w, x, y, z], "weight": float }, ... ],
//     "residual": float }
// Quaternions are written on the w >= 0 hemisphere and weights sum to 1.

#include <dcc/error.hpp>
#include <dcc/povm.hpp>

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace dcc {

inline nlohmann::json design_to_json(const FinitePovm& povm, double residual) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : povm.points) {
        const auto q = p.g.canonical().quaternion();
        pts.push_back({{"q", {q[0], q[1], q[2], q[3]}}, {"weight", p.weight}});
    }
    return {{"n_spins", povm.n_spins},
            {"j_max_twice", povm.j_max_twice},
            {"points", std::move(pts)},
            {"residual", residual}};
}

/// Schema validation only; see load_certified_design for the residual check.
inline FinitePovm design_from_json(const nlohmann::json& doc) {
    auto fail = [](const std::string& what) { throw DesignFormatError("design file: " + what); };
    if (!doc.is_object()) fail("top level must be an object");
    for (const char* key : {"n_spins", "j_max_twice", "points", "residual"})
        if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
    if (!doc["n_spins"].is_number_integer() || !doc["j_max_twice"].is_number_integer())
        fail("n_spins and j_max_twice must be integers");
    if (!doc["residual"].is_number()) fail("residual must be a number");
    if (!doc["points"].is_array() || doc["points"].empty()) fail("points must be a non-empty array");

    FinitePovm povm;
    povm.n_spins = doc["n_spins"].get<int>();
    povm.j_max_twice = doc["j_max_twice"].get<int>();
    if (povm.n_spins < 1) fail("n_spins must be >= 1");
    if (povm.j_max_twice < povm.n_spins + 2 || (povm.j_max_twice - povm.n_spins) % 2 != 0)
        fail("j_max_twice must be at least n_spins + 2 with the parity of n_spins");

    for (const auto& item : doc["points"]) {
        if (!item.is_object() || !item.contains("q") || !item.contains("weight"))
            fail("each point needs 'q' and 'weight'");
        const auto& q = item["q"];
        if (!q.is_array() || q.size() != 4) fail("'q' must hold four numbers");
        std::array<double, 4> comp{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!q[i].is_number()) fail("'q' must hold four numbers");
            comp[i] = q[i].get<double>();
        }
        if (!item["weight"].is_number()) fail("'weight' must be a number");
        const double w = item["weight"].get<double>();
        if (!(w > 0.0) || !std::isfinite(w)) fail("weights must be strictly positive");
        try {
            povm.points.push_back({Rotation::from_quaternion(comp), w});
        } catch (const InvalidArgument&) {
            fail("quaternion must be finite and nonzero");
        }
    }
    if (std::abs(povm.weight_sum() - 1.0) > 1e-12) fail("weights must sum to 1");
    return povm;
}

inline void save_design(const std::string& path, const FinitePovm& povm, double residual) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << design_to_json(povm, residual).dump(2) << '\n';
    if (!out) throw Error("failed writing '" + path + "'");
}

inline FinitePovm load_design(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DesignFormatError(std::string("design file: invalid JSON: ") + e.what());
    }
    return design_from_json(doc);
}

/// Loads a design and recomputes its orthogonality residual; the stored
/// "residual" field is not trusted.
inline FinitePovm load_certified_design(const std::string& path) {
    FinitePovm povm = load_design(path);
    const DesignReport report = verify_design(povm, povm.j_max_twice);
    if (!(report.max_residual <= design_tolerance)) {
        std::ostringstream msg;
        msg << "design '" << path << "' fails certification: residual " << report.max_residual;
        throw CertificationError(msg.str());
    }
    return povm;
}

}  // namespace dcc
