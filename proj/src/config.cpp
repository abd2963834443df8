#include "vaxgame/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace vaxgame {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream out;
    out << origin << ":" << line << ": " << msg;
    throw ConfigError(out.str());
}

const std::map<std::string, std::string> kKeySection = {
    {"beta", "model"},      {"kappa", "model"},     {"theta", "model"},
    {"m1", "model"},        {"m2", "model"},        {"alpha.variant", "alpha"},
    {"alpha.abar", "alpha"}, {"alpha.p", "alpha"},  {"alpha.q", "alpha"},
    {"alpha.b", "alpha"},   {"f.variant", "f"},     {"f.r", "f"},
    {"g.variant", "g"},     {"g.lambda", "g"},      {"g.a1_lo", "g"},
    {"g.a1_hi", "g"},       {"g.a2_lo", "g"},       {"g.a2_hi", "g"},
    {"g.delta", "g"},
};

class ConfigMap {
public:
    ConfigMap(std::istream& in, std::string origin) : origin_(std::move(origin)) {
        std::string raw;
        int line = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line;
            const std::string s = trim(raw);
            if (s.empty() || s.front() == '#') continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(origin_, line, "malformed section header");
                section = trim(s.substr(1, s.size() - 2));
                if (section != "model" && section != "alpha" && section != "f" &&
                    section != "g")
                    fail(origin_, line, "unknown section '" + section + "'");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(origin_, line, "expected 'key = value'");
            const std::string key = trim(s.substr(0, eq));
            const std::string value = trim(s.substr(eq + 1));
            const auto it = kKeySection.find(key);
            if (it == kKeySection.end())
                fail(origin_, line, "unknown key '" + key + "'");
            if (it->second != section)
                fail(origin_, line,
                     "key '" + key + "' belongs in section [" + it->second + "]");
            if (entries_.count(key)) fail(origin_, line, "duplicate key '" + key + "'");
            entries_[key] = Entry{value, line};
        }
    }

    std::string require(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(origin_ + ": missing required key '" + key + "'");
        return it->second.value;
    }

    double require_num(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(origin_ + ": missing required key '" + key + "'");
        return to_num(key, it->second);
    }

    std::optional<double> optional_num(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return to_num(key, it->second);
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

private:
    double to_num(const std::string& key, const Entry& e) const {
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (end == e.value.c_str() || *end != '\0')
            fail(origin_, e.line, "key '" + key + "' is not a number");
        return v;
    }

    std::string origin_;
    std::map<std::string, Entry> entries_;
};

} // namespace

Scenario parse_scenario(std::istream& in, const std::string& origin) {
    const ConfigMap cfg(in, origin);

    const double beta = cfg.require_num("beta");
    const double kappa = cfg.require_num("kappa");
    const double theta = cfg.require_num("theta");
    const double m1 = cfg.require_num("m1");
    const double m2 = cfg.require_num("m2");

    RateSpec alpha = RateSpec::linear(1.0);
    const std::string av = cfg.require("alpha.variant");
    if (av == "linear") {
        alpha = RateSpec::linear(cfg.require_num("alpha.abar"));
    } else if (av == "holling") {
        alpha = RateSpec::holling(cfg.require_num("alpha.abar"), cfg.require_num("alpha.p"),
                                  cfg.require_num("alpha.q"), cfg.require_num("alpha.b"));
    } else {
        throw ConfigError(origin + ": alpha.variant must be 'linear' or 'holling'");
    }

    VaccinationSpec f = VaccinationSpec::identity();
    const std::string fv = cfg.require("f.variant");
    if (fv == "identity")
        f = VaccinationSpec::identity();
    else if (fv == "power")
        f = VaccinationSpec::power(cfg.require_num("f.r"));
    else if (fv == "smoothstep3")
        f = VaccinationSpec::smoothstep(3);
    else if (fv == "smoothstep5")
        f = VaccinationSpec::smoothstep(5);
    else
        throw ConfigError(origin +
                          ": f.variant must be identity, power, smoothstep3 or smoothstep5");

    FluxSpec g = FluxSpec::zero();
    const std::string gv = cfg.require("g.variant");
    if (gv == "zero") {
        g = FluxSpec::zero();
    } else if (gv == "regularized_vax") {
        g = FluxSpec::regularized_vax(cfg.require_num("g.lambda"), cfg.require_num("g.a1_lo"),
                                      cfg.require_num("g.a1_hi"), cfg.require_num("g.a2_lo"),
                                      cfg.require_num("g.a2_hi"), cfg.require_num("g.delta"),
                                      m1, m2);
    } else {
        throw ConfigError(origin + ": g.variant must be 'zero' or 'regularized_vax'");
    }

    try {
        return Scenario(beta, kappa, theta, m1, m2, alpha, f, g);
    } catch (const DomainError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_scenario(in, path);
}

} // namespace vaxgame
