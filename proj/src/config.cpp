#include "pks/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pks/errors.hpp"

namespace pks {

namespace pt = boost::property_tree;

Grid GridSection::build() const {
    return dim == 1 ? Grid::line(nx, lx) : Grid::plane(nx, ny, lx, ly);
}

namespace {

const std::map<std::string, std::set<std::string>> kAllowed = {
    {"laws", {"m", "q", "cbar"}},
    {"grid", {"dim", "nx", "ny", "lx", "ly"}},
    {"medium",
     {"a_profile", "a_diag", "a_theta0", "a_theta1", "a_kappa", "c_profile", "lambda", "omega0_box"}},
    {"sim", {"epsilon", "eps", "alpha0", "dt", "cfl", "t_end", "output_every"}},
    {"target", {"kind", "interval", "center", "radius", "allow_outside"}},
    {"experiment", {"kind"}},
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// line of "key" inside [section], for error messages
int find_line(const std::string& text, const std::string& section, const std::string& key) {
    std::istringstream in(text);
    std::string line, cur;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[') {
            cur = trim(t.substr(1, t.find(']') - 1));
            if (key.empty() && cur == section) return n;
            continue;
        }
        if (cur == section && trim(t.substr(0, t.find('='))) == key) return n;
    }
    return 0;
}

double to_double(const std::string& s, const std::string& field) {
    std::string t = trim(s);
    double v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw ValidationError(field + ": not a number: '" + s + "'");
    return v;
}

int to_int(const std::string& s, const std::string& field) {
    std::string t = trim(s);
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty())
        throw ValidationError(field + ": not an integer: '" + s + "'");
    return v;
}

bool to_bool(const std::string& s, const std::string& field) {
    std::string t = trim(s);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ValidationError(field + ": expected true or false");
}

struct Section {
    const pt::ptree* tree = nullptr;
    std::string name;

    bool has(const std::string& k) const { return tree->find(k) != tree->not_found(); }
    std::string raw(const std::string& k) const {
        if (!has(k)) throw ValidationError(name + "." + k + ": required");
        return tree->get<std::string>(k);
    }
    double num(const std::string& k) const { return to_double(raw(k), name + "." + k); }
    double num(const std::string& k, double def) const { return has(k) ? num(k) : def; }
    int integer(const std::string& k) const { return to_int(raw(k), name + "." + k); }
    int integer(const std::string& k, int def) const { return has(k) ? integer(k) : def; }
};

Box parse_box(const std::string& s, int dim) {
    auto v = parse_number_list(s, "medium.omega0_box");
    Box b;
    if (v.size() == 2 && dim == 1) {
        b.x0 = v[0];
        b.x1 = v[1];
    } else if (v.size() == 4 && dim == 2) {
        b.x0 = v[0];
        b.x1 = v[1];
        b.y0 = v[2];
        b.y1 = v[3];
    } else {
        throw ValidationError("medium.omega0_box: expected 2 numbers in 1D, 4 in 2D");
    }
    if (!(b.x1 > b.x0) || (dim == 2 && !(b.y1 > b.y0))) throw ValidationError("medium.omega0_box: empty box");
    return b;
}

} // namespace

std::vector<double> parse_number_list(const std::string& s, const std::string& field) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(to_double(item, field));
    if (out.empty()) throw ValidationError(field + ": empty list");
    return out;
}

RunConfig parse_config_text(const std::string& text) {
    pt::ptree root;
    {
        std::istringstream in(text);
        try {
            pt::read_ini(in, root);
        } catch (const pt::ini_parser_error& e) {
            throw ParseError(e.message(), static_cast<int>(e.line()));
        }
    }
    if (root.empty()) throw ParseError("empty configuration", 1);

    for (const auto& [sec, body] : root) {
        auto it = kAllowed.find(sec);
        if (it == kAllowed.end()) {
            if (body.empty()) throw ParseError("key outside any section: " + sec, find_line(text, "", sec));
            throw ParseError("unknown section [" + sec + "]", find_line(text, sec, ""));
        }
        for (const auto& kv : body)
            if (!it->second.count(kv.first))
                throw ParseError("unknown key " + sec + "." + kv.first, find_line(text, sec, kv.first));
    }

    RunConfig cfg;
    auto section = [&](const char* n) -> std::optional<Section> {
        auto it = root.find(n);
        if (it == root.not_found()) return std::nullopt;
        return Section{&it->second, n};
    };

    if (auto s = section("laws")) {
        LawsSection l{s->num("m"), s->num("q"), s->num("cbar")};
        if (!(l.q >= 2)) throw ValidationError("laws.q: must be >= 2");
        if (!(l.cbar > 0)) throw ValidationError("laws.cbar: must be positive");
        double qp = l.q / (l.q - 1);
        if (!(l.m > qp))
            throw ValidationError("laws.m: compatibility needs m > q' = " + std::to_string(qp) +
                                  ", got m = " + std::to_string(l.m));
        cfg.laws = l;
    }

    int dim = 1;
    if (auto s = section("grid")) {
        GridSection g;
        g.dim = s->integer("dim");
        if (g.dim != 1 && g.dim != 2) throw ValidationError("grid.dim: must be 1 or 2");
        g.nx = s->integer("nx");
        g.lx = s->num("lx");
        if (g.dim == 2) {
            g.ny = s->integer("ny");
            g.ly = s->num("ly");
        }
        if (g.nx < 2 || g.ny < 1 || (g.dim == 2 && g.ny < 2)) throw ValidationError("grid: too few cells");
        if (!(g.lx > 0) || !(g.ly > 0)) throw ValidationError("grid: lengths must be positive");
        dim = g.dim;
        cfg.grid = g;
    }

    if (cfg.laws) cfg.medium.c_bar = cfg.laws->cbar;
    if (auto s = section("medium")) {
        cfg.has_medium = true;
        MediumSpec& m = cfg.medium;
        std::string ap = s->has("a_profile") ? trim(s->raw("a_profile")) : "identity";
        if (ap == "identity") {
            m.a_profile = AProfile::Identity;
        } else if (ap == "diag") {
            m.a_profile = AProfile::Diagonal;
            auto d = parse_number_list(s->raw("a_diag"), "medium.a_diag");
            if (d.size() != 2 || !(d[0] > 0) || !(d[1] > 0))
                throw ValidationError("medium.a_diag: expected two positive numbers");
            m.a_diag = {d[0], d[1]};
        } else if (ap == "rotating") {
            m.a_profile = AProfile::Rotating;
            m.theta0 = s->num("a_theta0", 0.0);
            m.theta1 = s->num("a_theta1", 0.0);
            m.kappa = s->num("a_kappa");
            if (!(m.kappa > 0)) throw ValidationError("medium.a_kappa: must be positive");
        } else {
            throw ValidationError("medium.a_profile: unknown profile '" + ap + "'");
        }
        std::string cp = s->has("c_profile") ? trim(s->raw("c_profile")) : "constant";
        if (cp == "constant") {
            m.c_profile = CProfile::Constant;
        } else if (cp == "quadratic-moat" || cp == "quartic") {
            m.c_profile = cp == "quartic" ? CProfile::Quartic : CProfile::QuadraticMoat;
            m.lambda = s->num("lambda");
            if (!(m.lambda > 0)) throw ValidationError("medium.lambda: must be positive");
            m.omega0 = parse_box(s->raw("omega0_box"), dim);
        } else {
            throw ValidationError("medium.c_profile: unknown profile '" + cp + "'");
        }
    }

    if (auto s = section("sim")) {
        SimParams p;
        if (s->has("eps")) {
            cfg.eps_list = parse_number_list(s->raw("eps"), "sim.eps");
            for (size_t i = 0; i < cfg.eps_list.size(); ++i) {
                if (!(cfg.eps_list[i] > 0)) throw ValidationError("sim.eps: values must be positive");
                if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1]))
                    throw ValidationError("sim.eps: list must be strictly decreasing");
            }
        }
        if (s->has("epsilon")) {
            p.epsilon = s->num("epsilon");
        } else if (!cfg.eps_list.empty()) {
            p.epsilon = cfg.eps_list.front();
        } else {
            throw ValidationError("sim.epsilon: required");
        }
        if (!(p.epsilon > 0)) throw ValidationError("sim.epsilon: must be positive");
        p.alpha0 = s->num("alpha0", 1.0);
        if (!(p.alpha0 > 0)) throw ValidationError("sim.alpha0: must be positive");
        if (s->has("dt") && trim(s->raw("dt")) != "auto") {
            p.dt = s->num("dt");
            if (!(p.dt > 0)) throw ValidationError("sim.dt: must be positive or auto");
        }
        p.cfl = s->num("cfl", 0.4);
        if (!(p.cfl > 0 && p.cfl <= 1)) throw ValidationError("sim.cfl: must lie in (0, 1]");
        p.t_end = s->num("t_end", 0.0);
        if (p.t_end < 0) throw ValidationError("sim.t_end: must be nonnegative");
        p.output_every = s->integer("output_every", 0);
        if (p.output_every < 0) throw ValidationError("sim.output_every: must be nonnegative");
        cfg.sim = p;
    }

    if (auto s = section("target")) {
        TargetSection t;
        t.kind = s->has("kind") ? trim(s->raw("kind")) : "interval";
        if (t.kind == "interval") {
            auto v = parse_number_list(s->raw("interval"), "target.interval");
            if (v.size() != 2 || !(v[1] > v[0])) throw ValidationError("target.interval: expected x0 < x1");
            t.x0 = v[0];
            t.x1 = v[1];
        } else if (t.kind == "disk") {
            auto c = parse_number_list(s->raw("center"), "target.center");
            if (c.size() != 2) throw ValidationError("target.center: expected two numbers");
            t.cx = c[0];
            t.cy = c[1];
            t.radius = s->num("radius");
            if (!(t.radius > 0)) throw ValidationError("target.radius: must be positive");
        } else {
            throw ValidationError("target.kind: unknown kind '" + t.kind + "'");
        }
        if (s->has("allow_outside")) t.allow_outside = to_bool(s->raw("allow_outside"), "target.allow_outside");
        cfg.target = t;
    }

    if (auto s = section("experiment")) {
        cfg.experiment = trim(s->raw("kind"));
        static const std::set<std::string> kinds = {"constants", "potentials", "profile",
                                                    "simulate",  "gamma-sweep", "check"};
        if (!kinds.count(cfg.experiment)) throw ValidationError("experiment.kind: unknown '" + cfg.experiment + "'");
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace pks
