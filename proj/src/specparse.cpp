#include "holab/specparse.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace holab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const char* what) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string("bad number for ") + what + ": '" + s + "'");
    return v;
}

std::complex<double> parse_complex(const std::string& s) {
    // forms: "a", "a+bi", "a-bi", "bi"
    std::string t = s;
    if (!t.empty() && t.back() == 'i') {
        t.pop_back();
        // find the split between real and imaginary parts
        for (std::size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
                return {to_double(t.substr(0, i), "complex"),
                        to_double(t.substr(i), "complex")};
            }
        }
        return {0.0, to_double(t.empty() ? "1" : t, "complex")};
    }
    return {to_double(t, "complex"), 0.0};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

OrliczFunction parse_orlicz_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& head = parts[0];
    auto arg = [&](std::size_t i, const char* what) -> std::string {
        if (parts.size() <= i) throw std::invalid_argument(std::string(what) + ": missing parameter");
        return parts[i];
    };
    if (head == "power") return OrliczFunction::power(to_double(arg(1, "power"), "power"));
    if (head == "exp_power")
        return OrliczFunction::exp_power(to_double(arg(1, "exp_power"), "exp_power"));
    if (head == "exp_log_power")
        return OrliczFunction::exp_log_power(to_double(arg(1, "exp_log_power"), "exp_log_power"));
    if (head == "exp_x") return OrliczFunction::exp_x();
    if (head == "loglog") return OrliczFunction::loglog();
    if (head == "logloglog") return OrliczFunction::logloglog();
    if (head == "product" || head == "explicit_product") return OrliczFunction::explicit_product();
    if (head == "critere")
        return build_critere_orlicz(int(to_double(arg(1, "critere"), "critere")));
    if (head == "piecewise") {
        const std::string a = arg(1, "piecewise");
        if (a.empty() || a[0] != '@')
            throw std::invalid_argument("piecewise: expected @file.csv");
        return OrliczFunction::piecewise(read_csv_pairs(a.substr(1)));
    }
    throw std::invalid_argument("unknown Orlicz spec: '" + spec + "'");
}

Symbol parse_symbol_spec(const std::string& spec, const OrliczFunction* psi) {
    const auto parts = split(spec, ':');
    const std::string& head = parts[0];
    if (head == "identity") return Symbol::identity();
    if (head == "const") {
        if (parts.size() < 2) throw std::invalid_argument("const: missing value");
        return Symbol::constant(parse_complex(parts[1]));
    }
    if (head == "lens")
        return Symbol::lens(parts.size() > 1 ? to_double(parts[1], "lens eps") : 0.25);
    if (head == "phi-theta" || head == "phi_theta") {
        if (parts.size() < 2) throw std::invalid_argument("phi-theta: missing theta");
        const double theta = to_double(parts[1], "theta");
        const double eps = parts.size() > 2 ? to_double(parts[2], "eps") : 0.0;
        return Symbol::phi_theta(theta, eps);
    }
    if (head == "general") {
        if (parts.size() < 2 || parts[1].empty() || parts[1][0] != '@')
            throw std::invalid_argument("general: expected @profile.csv with h,c rows");
        const auto rows = read_csv_pairs(parts[1].substr(1));
        std::vector<double> h, c;
        for (auto& [hv, cv] : rows) {
            h.push_back(hv);
            c.push_back(cv);
        }
        return Symbol::general(ProfileFunction(h, c));
    }
    if (head == "outer") {
        if (parts.size() < 2 || parts[1].empty() || parts[1][0] != '@')
            throw std::invalid_argument("outer: expected @modulus.csv");
        if (psi == nullptr) throw std::invalid_argument("outer: requires --psi");
        return Symbol::outer(read_csv_column(parts[1].substr(1)), *psi);
    }
    throw std::invalid_argument("unknown symbol spec: '" + spec + "'");
}

ConditionSpec parse_condition_spec(const std::string& spec) {
    const auto parts = split(spec, ':');
    const std::string& head = parts[0];
    ConditionSpec c;
    if (head == "delta2") {
        c.kind = Condition::delta2;
    } else if (head == "delta-sup2" || head == "delta_sup2") {
        c.kind = Condition::delta_sup2;
        if (parts.size() > 1) c.A = to_double(parts[1], "A");
    } else if (head == "delta-sup1" || head == "delta_sup1") {
        c.kind = Condition::delta_sup1;
        if (parts.size() > 1) c.A = to_double(parts[1], "A");
    } else if (head == "nabla0") {
        c.kind = Condition::nabla0;
    } else if (head == "slow-growth" || head == "slow_growth") {
        c.kind = Condition::slow_growth;
        if (parts.size() > 1) c.eps = to_double(parts[1], "eps");
    } else if (head == "theta") {
        c.kind = Condition::theta_condition;
        if (parts.size() > 1) c.A = to_double(parts[1], "A");
        if (parts.size() > 2) c.theta = to_double(parts[2], "theta");
    } else {
        throw std::invalid_argument("unknown condition spec: '" + spec + "'");
    }
    return c;
}

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ls(line);
        double a, b;
        if (ls >> a >> b) rows.emplace_back(a, b);
        // silently skip header lines
    }
    if (rows.empty()) throw std::runtime_error("no numeric rows in " + path);
    return rows;
}

std::vector<double> read_csv_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream ls(line);
        double a;
        if (ls >> a) rows.push_back(a);
    }
    if (rows.empty()) throw std::runtime_error("no numeric rows in " + path);
    return rows;
}

std::string profile_csv(const CarlesonProfile& p) {
    std::string out = "h,rho,stderr,n_points\n";
    for (std::size_t i = 0; i < p.h.size(); ++i) {
        out += fmt17(p.h[i]);
        out += ',';
        out += fmt17(p.rho[i]);
        out += ',';
        out += fmt17(p.stderr_[i]);
        out += ',';
        out += std::to_string(p.n_points);
        out += '\n';
    }
    return out;
}

std::string dyadic_csv(const DyadicMeasure& dm) {
    std::string out = "n,j,mass\n";
    for (int n = 1; n <= dm.depth; ++n) {
        const auto& row = dm.counts[std::size_t(n - 1)];
        for (std::size_t j = 0; j < row.size(); ++j) {
            out += std::to_string(n);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += fmt17(double(row[j]) / double(dm.n_points));
            out += '\n';
        }
    }
    return out;
}

namespace {
nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["criterion"] = v.criterion;
    j["holds"] = to_string(v.holds);
    nlohmann::json params = nlohmann::json::object();
    for (auto& [k, val] : v.params) params[k] = val;
    j["params"] = params;
    nlohmann::json ev = nlohmann::json::array();
    for (auto& [h, r] : v.evidence) ev.push_back({h, r});
    j["evidence"] = ev;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}
}  // namespace

std::string verdict_json(const Verdict& v) { return verdict_to_json(v).dump(2); }

std::string growth_verdict_json(const GrowthVerdict& v) {
    nlohmann::json j;
    j["criterion"] = v.condition.name();
    j["holds"] = to_string(v.holds);
    nlohmann::json params = nlohmann::json::object();
    params["grid_lo"] = v.grid_lo;
    params["grid_hi"] = v.grid_hi;
    if (v.witness_param != 0.0) params["witness_A"] = v.witness_param;
    j["params"] = params;
    nlohmann::json ev = nlohmann::json::array();
    for (auto& [s, r] : v.fitted) ev.push_back({s, r});
    j["evidence"] = ev;
    if (v.witness) {
        nlohmann::json w;
        w["x"] = v.witness->x;
        w["h"] = v.witness->h;
        w["c"] = v.witness->c;
        j["witness"] = w;
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace holab
