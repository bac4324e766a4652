#include "mhdlab/run_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mhdlab/checkpoint.hpp"
#include "mhdlab/errors.hpp"

namespace mhdlab {
namespace {

const std::array<std::string, 28> known_keys = {
    "n",          "viscosity",   "diffusivity",      "dt",
    "t_end",      "scheme",      "cfl_safety",       "snapshot_every",
    "checkpoint_every", "init",  "checkpoint_path",  "rho1",
    "rho2",       "amplitude",   "m",                "seed",
    "norms",      "const_C",     "const_eta",        "const_eps0",
    "const_C1",   "const_C2",    "const_b",          "epsilon",
    "cond_p",     "cond_r",      "oversample",       "out_dir",
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                               diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = 4;  // suggest only close misspellings
    for (const auto& k : known_keys) {
        const std::size_t d = levenshtein(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    if (levenshtein(key, "abort_after_steps") < best_d) best = "abort_after_steps";
    return best;
}

[[noreturn]] void fail_line(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        fail_line(line, "value for '" + key + "' is not a number: '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        fail_line(line, "value for '" + key + "' is not an integer: '" + v + "'");
    }
}

std::vector<NormRequest> parse_norms(const std::string& v, int line) {
    std::vector<NormRequest> out;
    std::stringstream entries(v);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        std::stringstream ss(entry);
        NormRequest nr;
        std::vector<std::string> tok;
        std::string t;
        while (ss >> t) tok.push_back(t);
        if (tok.size() < 2) fail_line(line, "norm entry '" + entry + "' needs field and kind");
        nr.field = tok[0];
        nr.kind = tok[1];
        if (nr.field != "u" && nr.field != "B" && nr.field != "W+" && nr.field != "W-")
            fail_line(line, "norm field must be u, B, W+ or W-, got '" + nr.field + "'");
        if (nr.kind == "besov") {
            if (tok.size() != 5)
                fail_line(line, "besov norm entry needs: <field> besov <s> <p> <r>");
            nr.s = parse_double(tok[2], line, "norms");
            nr.p = parse_double(tok[3], line, "norms");
            nr.r = parse_double(tok[4], line, "norms");
        } else if (nr.kind == "chi") {
            if (tok.size() != 3) fail_line(line, "chi norm entry needs: <field> chi <s>");
            nr.s = parse_double(tok[2], line, "norms");
            nr.p = 1.0;
            nr.r = 1.0;
        } else {
            fail_line(line, "norm kind must be besov or chi, got '" + nr.kind + "'");
        }
        out.push_back(nr);
    }
    return out;
}

void validate(const RunConfig& c, const std::set<std::string>& seen) {
    auto require = [&](const char* key) {
        if (!seen.count(key))
            throw ConfigError(std::string("config: required key '") + key + "' is missing");
    };
    require("n");
    require("viscosity");
    require("diffusivity");
    require("dt");
    require("t_end");

    if (c.n < 8 || (c.n & (c.n - 1)) != 0)
        throw ConfigError("config: n must be a power of two >= 8");
    if (!(c.mu1 > 0.0))
        throw ConfigError("config: viscosity must be positive (zero-dissipation runs are "
                          "outside this solver's scope)");
    if (!(c.mu2 > 0.0))
        throw ConfigError("config: diffusivity must be positive (zero-dissipation runs are "
                          "outside this solver's scope)");
    if (!(c.dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (c.t_end < 0.0) throw ConfigError("config: t_end must be >= 0");
    if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0))
        throw ConfigError("config: cfl_safety must lie in (0, 1]");
    if (c.snapshot_every < 1) throw ConfigError("config: snapshot_every must be >= 1");
    if (c.checkpoint_every < 0) throw ConfigError("config: checkpoint_every must be >= 0");
    if (c.scheme != "if-rk2" && c.scheme != "if-rk4")
        throw ConfigError("config: scheme must be if-rk2 or if-rk4");
    if (c.init != "stream" && c.init != "checkpoint")
        throw ConfigError("config: init must be stream or checkpoint");
    if (c.init == "checkpoint" && c.checkpoint_path.empty())
        throw ConfigError("config: init = checkpoint requires checkpoint_path");
    if (!(c.rho1 > 0.0 && c.rho2 > c.rho1))
        throw ConfigError("config: need 0 < rho1 < rho2");
    if (c.m < 1) throw ConfigError("config: m must be >= 1");
    if (!(c.const_C > 0.0)) throw ConfigError("config: const_C must be positive");
    if (!(c.const_eta > 0.0)) throw ConfigError("config: const_eta must be positive");
    if (!(c.const_eps0 > 0.0)) throw ConfigError("config: const_eps0 must be positive");
    if (c.const_C1 < 0.0) throw ConfigError("config: const_C1 must be >= 0");
    if (!(c.const_C2 > 0.0)) throw ConfigError("config: const_C2 must be positive");
    if (c.const_b < 0.0) throw ConfigError("config: const_b must be >= 0");
    if (!(c.epsilon >= 0.0 && c.epsilon < 1.0))
        throw ConfigError("config: epsilon must lie in [0, 1)");
    if (!(c.cond_p >= 1.0)) throw ConfigError("config: cond_p must be >= 1");
    if (!(c.cond_r >= 1.0)) throw ConfigError("config: cond_r must be >= 1");
    if (c.oversample < 1) throw ConfigError("config: oversample must be >= 1");
    if (c.out_dir.empty()) throw ConfigError("config: out_dir must not be empty");
    if (c.abort_after_steps < 0) throw ConfigError("config: abort_after_steps must be >= 0");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::set<std::string> seen;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string stripped = trim(raw.substr(0, raw.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail_line(line, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));
        if (key.empty()) fail_line(line, "empty key");

        const bool known = key == "abort_after_steps" ||
                           std::find(known_keys.begin(), known_keys.end(), key) !=
                               known_keys.end();
        if (!known) {
            const std::string hint = nearest_key(key);
            fail_line(line, "unknown key '" + key + "'" +
                                (hint.empty() ? "" : "; did you mean '" + hint + "'?"));
        }
        if (!seen.insert(key).second) fail_line(line, "duplicate key '" + key + "'");

        if (key == "n")
            c.n = static_cast<int>(parse_int(val, line, key));
        else if (key == "viscosity")
            c.mu1 = parse_double(val, line, key);
        else if (key == "diffusivity")
            c.mu2 = parse_double(val, line, key);
        else if (key == "dt")
            c.dt = parse_double(val, line, key);
        else if (key == "t_end")
            c.t_end = parse_double(val, line, key);
        else if (key == "scheme")
            c.scheme = val;
        else if (key == "cfl_safety")
            c.cfl_safety = parse_double(val, line, key);
        else if (key == "snapshot_every")
            c.snapshot_every = static_cast<int>(parse_int(val, line, key));
        else if (key == "checkpoint_every")
            c.checkpoint_every = static_cast<int>(parse_int(val, line, key));
        else if (key == "init")
            c.init = val;
        else if (key == "checkpoint_path")
            c.checkpoint_path = val;
        else if (key == "rho1")
            c.rho1 = parse_double(val, line, key);
        else if (key == "rho2")
            c.rho2 = parse_double(val, line, key);
        else if (key == "amplitude")
            c.amplitude = parse_double(val, line, key);
        else if (key == "m")
            c.m = static_cast<int>(parse_int(val, line, key));
        else if (key == "seed")
            c.seed = static_cast<std::uint64_t>(parse_int(val, line, key));
        else if (key == "norms")
            c.norms = parse_norms(val, line);
        else if (key == "const_C")
            c.const_C = parse_double(val, line, key);
        else if (key == "const_eta")
            c.const_eta = parse_double(val, line, key);
        else if (key == "const_eps0")
            c.const_eps0 = parse_double(val, line, key);
        else if (key == "const_C1")
            c.const_C1 = parse_double(val, line, key);
        else if (key == "const_C2")
            c.const_C2 = parse_double(val, line, key);
        else if (key == "const_b")
            c.const_b = parse_double(val, line, key);
        else if (key == "epsilon")
            c.epsilon = parse_double(val, line, key);
        else if (key == "cond_p")
            c.cond_p = parse_double(val, line, key);
        else if (key == "cond_r")
            c.cond_r = parse_double(val, line, key);
        else if (key == "oversample")
            c.oversample = static_cast<int>(parse_int(val, line, key));
        else if (key == "out_dir")
            c.out_dir = val;
        else if (key == "abort_after_steps")
            c.abort_after_steps = static_cast<int>(parse_int(val, line, key));
    }
    validate(c, seen);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
    auto kd = [&](const char* k, double v) { kv(k, format_g17(v)); };
    auto ki = [&](const char* k, long long v) { kv(k, std::to_string(v)); };
    ki("n", c.n);
    kd("viscosity", c.mu1);
    kd("diffusivity", c.mu2);
    kd("dt", c.dt);
    kd("t_end", c.t_end);
    kv("scheme", c.scheme);
    kd("cfl_safety", c.cfl_safety);
    ki("snapshot_every", c.snapshot_every);
    ki("checkpoint_every", c.checkpoint_every);
    kv("init", c.init);
    if (!c.checkpoint_path.empty()) kv("checkpoint_path", c.checkpoint_path);
    kd("rho1", c.rho1);
    kd("rho2", c.rho2);
    kd("amplitude", c.amplitude);
    ki("m", c.m);
    ki("seed", static_cast<long long>(c.seed));
    if (!c.norms.empty()) {
        std::string v;
        for (std::size_t i = 0; i < c.norms.size(); ++i) {
            const NormRequest& nr = c.norms[i];
            if (i) v += "; ";
            v += nr.field + " " + nr.kind + " " + format_g17(nr.s);
            if (nr.kind == "besov") v += " " + format_g17(nr.p) + " " + format_g17(nr.r);
        }
        kv("norms", v);
    }
    kd("const_C", c.const_C);
    kd("const_eta", c.const_eta);
    kd("const_eps0", c.const_eps0);
    kd("const_C1", c.const_C1);
    kd("const_C2", c.const_C2);
    kd("const_b", c.const_b);
    kd("epsilon", c.epsilon);
    kd("cond_p", c.cond_p);
    kd("cond_r", c.cond_r);
    ki("oversample", c.oversample);
    kv("out_dir", c.out_dir);
    ki("abort_after_steps", c.abort_after_steps);
    return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<NormRequest> default_norms(double p, double r) {
    const double lo = 3.0 / p - 1.0, hi = 3.0 / p + 1.0;
    return {
        {"W-", "besov", lo, p, r}, {"W-", "besov", hi, p, r},
        {"W+", "besov", lo, p, r}, {"W+", "besov", hi, p, r},
        {"W-", "chi", -1.0, 1.0, 1.0}, {"W-", "chi", 1.0, 1.0, 1.0},
        {"W+", "chi", -1.0, 1.0, 1.0}, {"W+", "chi", 1.0, 1.0, 1.0},
    };
}

}  // namespace mhdlab
