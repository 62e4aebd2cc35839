#include "polygpt/gpt/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace polygpt {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_vector(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_g17(v[i]);
    }
    out += ']';
}

template <typename Rows>
void append_matrix(std::string& out, const Rows& rows) {
    out += '[';
    bool first = true;
    for (const auto& row : rows) {
        out += first ? "\n    " : ",\n    ";
        first = false;
        append_vector(out, row.coords);
    }
    if (!first) out += "\n  ";
    out += ']';
}

}  // namespace

std::string theory_to_json(const Theory& t) {
    std::string out;
    out += "{\n";
    out += "  \"name\": \"" + t.name + "\",\n";
    out += "  \"d\": " + std::to_string(t.dim) + ",\n";
    out += "  \"extremal_states\": ";
    append_matrix(out, t.extremal_states);
    out += ",\n  \"unit\": ";
    append_vector(out, t.unit.coords);
    out += ",\n  \"zero\": ";
    append_vector(out, t.zero.coords);
    out += ",\n  \"extremal_effects\": ";
    append_matrix(out, t.extremal_effects);
    if (t.reflecting_hyperplane) {
        out += ",\n  \"reflecting_hyperplane\": {\"normal\": ";
        append_vector(out, t.reflecting_hyperplane->normal);
        out += ", \"offset\": " + format_g17(t.reflecting_hyperplane->offset) + "}";
    }
    out += "\n}\n";
    return out;
}

Theory theory_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("theory document: ") + e.what());
    }

    const auto read_vector = [](const nlohmann::json& j) {
        std::vector<double> v;
        v.reserve(j.size());
        for (const auto& x : j) v.push_back(x.get<double>());
        return v;
    };

    Theory t;
    try {
        t.name = doc.at("name").get<std::string>();
        t.dim = doc.at("d").get<int>();
        for (const auto& row : doc.at("extremal_states")) {
            t.extremal_states.emplace_back(read_vector(row));
        }
        t.unit = Effect(read_vector(doc.at("unit")));
        t.zero = Effect(read_vector(doc.at("zero")));
        if (doc.contains("extremal_effects")) {
            for (const auto& row : doc.at("extremal_effects")) {
                t.extremal_effects.emplace_back(read_vector(row));
            }
        }
        if (doc.contains("reflecting_hyperplane")) {
            Hyperplane h;
            h.normal = read_vector(doc.at("reflecting_hyperplane").at("normal"));
            h.offset = doc.at("reflecting_hyperplane").at("offset").get<double>();
            t.reflecting_hyperplane = std::move(h);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("theory document: ") + e.what());
    }

    if (t.dim < 2) throw std::runtime_error("theory document: d must be >= 2");
    if (static_cast<int>(t.unit.dim()) != t.dim || static_cast<int>(t.zero.dim()) != t.dim) {
        throw std::runtime_error("theory document: unit/zero dimension mismatch");
    }
    for (const State& s : t.extremal_states) {
        if (static_cast<int>(s.dim()) != t.dim) {
            throw std::runtime_error("theory document: state dimension mismatch");
        }
    }
    for (const Effect& e : t.extremal_effects) {
        if (static_cast<int>(e.dim()) != t.dim) {
            throw std::runtime_error("theory document: effect dimension mismatch");
        }
    }

    if (!t.extremal_states.empty()) {
        std::vector<geom::HalfSpaceD> hs;
        for (const State& w : t.extremal_states) {
            std::vector<double> up = w.coords;
            hs.emplace_back(up, 1.0);
            for (double& c : up) c = -c;
            hs.emplace_back(std::move(up), 0.0);
        }
        t.effect_halfspaces = std::move(hs);
        if (t.extremal_effects.empty()) {
            t.extremal_effects = enumerate_extremal_effects(t);
        }
    } else {
        t.effect_space_first = true;
        if (t.extremal_effects.size() < 4) {
            throw std::runtime_error(
                "theory document: effect-space-first theory needs extremal_effects");
        }
        if (t.dim != 3) {
            throw std::runtime_error(
                "theory document: effect-space-first reload supports d = 3 only");
        }
        std::vector<std::vector<double>> pts;
        for (const Effect& e : t.extremal_effects) pts.push_back(e.coords);
        t.effect_halfspaces = geom::convex_hull_facets_3d(pts);
    }

    if (!t.reflecting_hyperplane) {
        const ReflectingHyperplaneResult r = find_reflecting_hyperplane(t);
        if (r.found()) t.reflecting_hyperplane = r.hyperplane;
    }
    return t;
}

Theory load_theory_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open theory file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return theory_from_json(ss.str());
}

}  // namespace polygpt
