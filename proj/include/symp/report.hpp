#pragma once
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "forms.hpp"

namespace symp {

using Json = nlohmann::ordered_json;

// FNV-1a over the raw input bytes; reports carry it so a re-verification run
// can tie its output to the exact source file
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

inline Json json_poly(const GradedRing& R, const Polynomial& p) { return poly_string(R, p); }

inline Json json_matrix(const SparseMatrix& M) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(rat_string(M.get(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json json_pairing(const GradedRing& R, const PairingMatrix& M) {
    Json rows = Json::array();
    for (const auto& row : M.entries) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(poly_string(R, e));
        rows.push_back(r);
    }
    return rows;
}

inline Json json_closed_form(const GradedRing& R, const ClosedFormRep& f) {
    Json out;
    out["p"] = f.p;
    out["n"] = f.n;
    out["weight"] = f.weight;
    Json comps = Json::array();
    for (const auto& c : f.components) comps.push_back(poly_string(R, c));
    out["components"] = comps;
    return out;
}

inline Json json_certificate(const GradedRing& R, const SymplecticCertificate& c) {
    Json out;
    out["shift"] = c.n;
    out["form"] = json_closed_form(R, c.form);
    out["theta"] = json_pairing(R, c.theta);
    out["witness"] = json_matrix(c.witness);
    out["amplitude"] = Json::array({c.amplitude_lo, c.amplitude_hi});
    out["shift_compatible"] = c.shift_compatible;
    out["certified"] = true;
    return out;
}

} // namespace symp
