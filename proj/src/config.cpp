#include "scl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "scl/fixtures.hpp"

namespace scl {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

int to_int(const std::string& v, int line, const char* what) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError(std::string("expected integer for ") + what, line);
    return out;
}

double to_double(const std::string& v, int line, const char* what) {
    try {
        size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return out;
    } catch (...) {
        throw ConfigError(std::string("expected number for ") + what, line);
    }
}

bool to_bool(const std::string& v, int line, const char* what) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError(std::string("expected on/off for ") + what, line);
}

// gamma_k_i_j keys in the [connection] section.
bool parse_gamma_key(const std::string& key, std::array<int, 3>& out) {
    if (key.rfind("gamma_", 0) != 0) return false;
    std::string rest = key.substr(6);
    for (int slot = 0; slot < 3; ++slot) {
        const size_t us = rest.find('_');
        const std::string tok = (slot < 2) ? rest.substr(0, us) : rest;
        if (slot < 2 && us == std::string::npos) return false;
        int v = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) return false;
        out[slot] = v;
        if (slot < 2) rest = rest.substr(us + 1);
    }
    return true;
}

LiftFamilyEntry* family(ManifoldConfig& cfg, const std::string& name) {
    for (auto& f : cfg.hamiltonian)
        if (f.name == name) return &f;
    cfg.hamiltonian.push_back({name, {}, {}});
    return &cfg.hamiltonian.back();
}

void assign_indexed(std::vector<std::string>& v, int index1, std::string value, int line) {
    if (index1 < 1 || index1 > 64) throw ConfigError("component index out of range", line);
    if (static_cast<size_t>(index1) > v.size()) v.resize(index1);
    v[index1 - 1] = std::move(value);
}

} // namespace

ManifoldConfig parse_config(const std::string& text) {
    ManifoldConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", lineno);
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);

        if (section == "manifold") {
            if (key == "fixture")
                cfg.fixture = value;
            else if (key == "dimension")
                cfg.dimension = to_int(value, lineno, "dimension");
            else if (key == "allow_dim2")
                cfg.allow_dim2 = to_bool(value, lineno, "allow_dim2");
            else if (key.rfind("lambda", 0) == 0)
                assign_indexed(cfg.lambda, to_int(key.substr(6), lineno, "lambda index"), value,
                               lineno);
            else
                throw ConfigError("unknown key '" + key + "' in [manifold]", lineno);
        } else if (section == "connection") {
            std::array<int, 3> kij{};
            if (key == "potential")
                cfg.potential = value;
            else if (parse_gamma_key(key, kij)) {
                if (cfg.gamma.count(kij))
                    throw ConfigError("duplicate Christoffel entry " + key, lineno);
                cfg.gamma[kij] = value;
            } else
                throw ConfigError("unknown key '" + key + "' in [connection]", lineno);
        } else if (section.rfind("lifts.hamiltonian.", 0) == 0) {
            LiftFamilyEntry* fam = family(cfg, section.substr(18));
            if (key == "f")
                fam->hamiltonian = value;
            else if (key.front() == 'v')
                assign_indexed(fam->field, to_int(key.substr(1), lineno, "component index"),
                               value, lineno);
            else
                throw ConfigError("unknown key '" + key + "' in [" + section + "]", lineno);
        } else if (section == "lifts.conformal") {
            if (!cfg.conformal) cfg.conformal.emplace();
            if (key == "b")
                cfg.conformal->b = value;
            else if (key == "a")
                cfg.conformal->a = value;
            else if (key.front() == 'c')
                assign_indexed(cfg.conformal->field,
                               to_int(key.substr(1), lineno, "component index"), value, lineno);
            else
                throw ConfigError("unknown key '" + key + "' in [lifts.conformal]", lineno);
        } else if (section == "verify") {
            if (key == "samples")
                cfg.samples = to_int(value, lineno, "samples");
            else if (key == "seed")
                cfg.seed = static_cast<uint64_t>(to_double(value, lineno, "seed"));
            else if (key == "tol")
                cfg.tol = to_double(value, lineno, "tol");
            else if (key == "tol_fd")
                cfg.tol_fd = to_double(value, lineno, "tol_fd");
            else if (key == "jet_order_cap")
                cfg.jet_order_cap = to_int(value, lineno, "jet_order_cap");
            else if (key == "scale_ledger")
                cfg.scale_ledger = to_bool(value, lineno, "scale_ledger");
            else
                throw ConfigError("unknown key '" + key + "' in [verify]", lineno);
        } else if (section.empty()) {
            throw ConfigError("key before any section header", lineno);
        } else {
            throw ConfigError("unknown section [" + section + "]", lineno);
        }
    }
    return cfg;
}

ManifoldConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ExactSymplecticSpec build_spec(const ManifoldConfig& config) {
    if (!config.fixture.empty()) {
        if (config.dimension != 0 || !config.lambda.empty() || config.potential ||
            !config.gamma.empty())
            throw ConfigError("fixture and explicit manifold/connection sections are exclusive");
        try {
            return fixture_by_name(config.fixture);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    const int d = config.dimension;
    if (d == 0) throw ConfigError("missing [manifold] dimension (or fixture)");
    if (d % 2 != 0) throw ConfigError("chart dimension must be even, got " + std::to_string(d));
    if (d < (config.allow_dim2 ? 2 : 4))
        throw ConfigError("chart dimension must be at least 4 (allow_dim2 relaxes to 2)");
    if (static_cast<int>(config.lambda.size()) != d)
        throw ConfigError("need exactly " + std::to_string(d) + " lambda components");

    ExactSymplecticSpec spec;
    spec.chart = Chart::make(d, config.allow_dim2);
    std::vector<Expression> lam;
    for (int i = 0; i < d; ++i) {
        try {
            lam.push_back(Expression::parse(config.lambda[i], d));
        } catch (const ParseError& e) {
            throw ConfigError("lambda" + std::to_string(i + 1) + ": " + e.what());
        }
    }
    spec.lambda = OneFormField(d, std::move(lam));
    spec.omega = TwoFormField::exact(spec.lambda);

    if (config.potential && !config.gamma.empty())
        throw ConfigError("give either a connection potential or explicit Christoffels");
    if (config.potential) {
        try {
            spec.connection =
                ConnectionField::from_potential(Expression::parse(*config.potential, d),
                                                spec.omega);
        } catch (const ParseError& e) {
            throw ConfigError(std::string("potential: ") + e.what());
        }
    } else if (!config.gamma.empty()) {
        Grid3<Expression> lower(d, Expression::constant(0.0, d));
        for (const auto& [kij, text] : config.gamma) {
            const auto [k, i, j] = kij;
            if (k < 1 || k > d || i < 1 || i > d || j < 1 || j > d)
                throw ConfigError("Christoffel index out of range in gamma_" +
                                  std::to_string(k) + "_" + std::to_string(i) + "_" +
                                  std::to_string(j));
            if (i > j && config.gamma.count({k, j, i}))
                throw ConfigError("Christoffel entry gamma_" + std::to_string(k) + "_" +
                                  std::to_string(i) + "_" + std::to_string(j) +
                                  " duplicates its symmetric counterpart");
            try {
                Expression e = Expression::parse(text, d);
                lower(k - 1, std::min(i, j) - 1, std::max(i, j) - 1) = e;
            } catch (const ParseError& e) {
                throw ConfigError("gamma entry: " + std::string(e.what()));
            }
        }
        spec.connection = ConnectionField::from_expressions(d, std::move(lower));
    } else {
        throw ConfigError("missing [connection]: give a potential or explicit Christoffels");
    }
    return spec;
}

} // namespace scl
