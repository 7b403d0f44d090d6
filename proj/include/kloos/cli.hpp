#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: job description, dispatch and serialization.
 *
 * Output is a function of the job alone (command, parameters, seed, budget),
 * never of the thread count, so reruns are byte-identical.
 */

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kloos/arith.hpp"
#include "kloos/expsum.hpp"
#include "kloos/primesum.hpp"
#include "kloos/singular.hpp"
#include "kloos/smooth.hpp"
#include "kloos/verify.hpp"

namespace kloos::cli {

inline constexpr const char* schema_version = "kloos-lab/1";

enum class OutputFormat { json, csv, text };

struct JobSpec {
    std::string command;
    std::map<std::string, std::string> parameters;
    OutputFormat output = OutputFormat::json;
    u64 seed = 1;
    unsigned threads = 1;
    double budget = 1e9; // predicted word operations
};

struct RunOutput {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Bad or missing parameter; `param` names it.
class validation_error : public std::runtime_error {
public:
    validation_error(std::string param, const std::string& msg)
        : std::runtime_error("invalid --" + param + ": " + msg), param_(std::move(param)) {}
    const std::string& param() const { return param_; }

private:
    std::string param_;
};

struct ParamInfo {
    std::string name;
    std::string help;
};

struct CommandInfo {
    std::string name;
    std::string help;
    std::vector<ParamInfo> params;
};

inline const std::vector<CommandInfo>& commands() {
    static const std::vector<CommandInfo> table{
        {"kloosterman",
         "Kloosterman sum S(a,b;q)",
         {{"a", "first coefficient"},
          {"b", "second coefficient"},
          {"q", "modulus"},
          {"method", "direct | crt | salie (default direct)"},
          {"N", "sum only over n <= N (incomplete sum)"}}},
        {"ramanujan",
         "Ramanujan sum c_q(a)",
         {{"q", "modulus"}, {"a", "argument"}, {"method", "closed | direct | both (default closed)"}}},
        {"salie", "Salie sum modulo p^n by its closed form", {{"a", "first coefficient"}, {"b", "second coefficient"}, {"p", "odd prime"}, {"n", "exponent >= 2"}}},
        {"singular",
         "singular series kappa_k(c,m;q)",
         {{"k", "number of variables (>= 3)"},
          {"c", "product ab, a unit mod q"},
          {"m", "right-hand side"},
          {"q", "modulus"},
          {"route", "both | count | sum (default both)"}}},
        {"kappa-min",
         "minimum of kappa_k over (c, m) against the positivity floor",
         {{"k", "number of variables (>= 3)"},
          {"q", "modulus coprime to 6"},
          {"classes", "residue | all: which c are scanned for the reported minimum (default residue)"}}},
        {"count-solutions",
         "exact solution count of g(x_1)+...+g(x_k) = m (mod q)",
         {{"k", "number of variables"},
          {"c", "product ab, a unit mod q"},
          {"m", "right-hand side"},
          {"q", "modulus"},
          {"N", "restrict variables to primes <= N (units mod q otherwise)"}}},
        {"prime-sum",
         "Kloosterman sum over primes p <= X",
         {{"a", "first coefficient"},
          {"b", "second coefficient"},
          {"q", "modulus"},
          {"X", "prime limit"},
          {"weight", "plain | log | mangoldt (default plain)"}}},
        {"envelope",
         "sampled |W_q| against the prime-sum envelope",
         {{"q-lo", "smallest modulus (default 50)"},
          {"q-hi", "largest modulus (default 2000)"},
          {"x-exponent", "X = q^x (default 1.5)"},
          {"count", "number of samples (default 100)"},
          {"limit", "ratio regarded as stable (default 100)"}}},
        {"dickman",
         "Dickman rho and its tail integral",
         {{"u", "single argument"},
          {"from", "table start (default 0)"},
          {"to", "table end (default 10)"},
          {"points", "table rows (default 11)"}}},
        {"primorial-sigma",
         "large-divisor reciprocal sum of the primorial of X",
         {{"X", "prime bound"}, {"A", "threshold exponent (default 1)"}}},
        {"verify", "verification suites", {{"suite", "constants | closed-forms | bounds | asymptotics | smooth | all (default all)"}}},
    };
    return table;
}

namespace detail {

/// Doubles carry 15 significant digits.
inline json num(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline json rounded(const json& j) {
    if (j.is_number_float()) return num(j.get<double>());
    if (j.is_structured()) {
        json out = j;
        for (auto& v : out) v = rounded(v);
        return out;
    }
    return j;
}

struct Result {
    json fields = json::object();
    std::vector<json> rows;
    int exit_code = 0;
};

class Params {
public:
    Params(const CommandInfo& info, const std::map<std::string, std::string>& raw) : raw_(raw) {
        for (const auto& [key, value] : raw) {
            bool known = false;
            for (const auto& p : info.params) known = known || p.name == key;
            if (!known) throw validation_error(key, "not a parameter of " + info.name);
        }
    }

    bool has(const std::string& name) const { return raw_.count(name) > 0; }

    i64 get_i64(const std::string& name) const {
        const auto& s = require(name);
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw validation_error(name, "expected an integer, got '" + s + "'");
        }
    }
    i64 get_i64(const std::string& name, i64 fallback) const { return has(name) ? get_i64(name) : fallback; }

    u64 get_u64(const std::string& name, u64 min = 0) const {
        const auto& s = require(name);
        u64 v = 0;
        try {
            std::size_t pos = 0;
            if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
            v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw validation_error(name, "expected a non-negative integer, got '" + s + "'");
        }
        if (v < min) throw validation_error(name, "must be at least " + std::to_string(min));
        return v;
    }
    u64 get_u64(const std::string& name, u64 fallback, u64 min) const { return has(name) ? get_u64(name, min) : fallback; }

    double get_double(const std::string& name) const {
        const auto& s = require(name);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw validation_error(name, "expected a real number, got '" + s + "'");
        }
    }
    double get_double(const std::string& name, double fallback) const { return has(name) ? get_double(name) : fallback; }

    std::string get_choice(const std::string& name, const std::vector<std::string>& allowed) const {
        if (!has(name)) return allowed.front();
        const auto& s = raw_.at(name);
        for (const auto& a : allowed)
            if (a == s) return s;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw validation_error(name, "expected one of " + list + ", got '" + s + "'");
    }

private:
    const std::string& require(const std::string& name) const {
        auto it = raw_.find(name);
        if (it == raw_.end()) throw validation_error(name, "required");
        return it->second;
    }

    const std::map<std::string, std::string>& raw_;
};

inline std::string cost_string(double cost) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", cost);
    return buf;
}

inline void check_budget(double cost, const JobSpec& job) {
    if (cost > job.budget)
        throw validation_error("budget", "estimated cost " + cost_string(cost) + " word-ops exceeds budget " +
                                             cost_string(job.budget));
}

inline FactoredModulus modulus(const Params& p, const std::string& name = "q") {
    const u64 q = p.get_u64(name, 1);
    if (q > (u64{1} << 62)) throw validation_error(name, "modulus too large");
    return factorize(q);
}

inline u64 unit_param(const Params& p, const std::string& name, const FactoredModulus& q) {
    const i64 c = p.get_i64(name);
    const u64 r = reduce(c, q.value());
    if (!q.is_one() && !is_unit(r, q)) throw validation_error(name, "must be coprime to q");
    return q.is_one() ? 0 : r;
}

inline unsigned k_param(const Params& p, unsigned min) {
    const u64 k = p.get_u64("k", min);
    if (k > 64) throw validation_error("k", "must be at most 64");
    return static_cast<unsigned>(k);
}

inline double sum_route_cost(const FactoredModulus& q) {
    double cost = 0.0;
    for (u64 d : q.divisors()) cost += static_cast<double>(q.divisor(d).phi()) * static_cast<double>(d);
    return cost;
}

// ---------------------------------------------------------------------------
// Commands

inline Result cmd_kloosterman(const Params& p, const JobSpec& job) {
    const i64 a = p.get_i64("a"), b = p.get_i64("b");
    const auto q = modulus(p);
    const auto method = p.get_choice("method", {"direct", "crt", "salie"});
    Result r;
    if (p.has("N")) {
        const u64 N = p.get_u64("N", 1);
        if (N > q.value()) throw validation_error("N", "must not exceed q");
        check_budget(static_cast<double>(N), job);
        const auto v = kloosterman_incomplete(a, b, q.value(), N);
        r.fields["value_re"] = num(v.re.value);
        r.fields["value_im"] = num(v.im.value);
        r.fields["abs"] = num(v.abs());
        r.fields["abs_error"] = num(v.abs_error());
        r.fields["method"] = "incomplete";
        return r;
    }
    KloostermanValue v;
    if (method == "salie") {
        if (!q.is_prime_power()) throw validation_error("q", "salie needs an odd prime power");
        const auto [prime, exponent] = q.factors().front();
        v = kloosterman_salie(a, b, prime, exponent);
    } else if (method == "crt") {
        double cost = 0.0;
        for (const auto& f : q.factors()) cost += static_cast<double>(f.value());
        check_budget(cost, job);
        v = kloosterman_crt(a, b, q);
    } else {
        check_budget(static_cast<double>(q.value()), job);
        v = kloosterman_direct(a, b, q);
    }
    r.fields["value"] = num(v.value);
    r.fields["abs_error"] = num(v.abs_error);
    r.fields["method"] = method;
    return r;
}

inline Result cmd_ramanujan(const Params& p, const JobSpec& job) {
    const auto q = modulus(p);
    const i64 a = p.get_i64("a");
    const auto method = p.get_choice("method", {"closed", "direct", "both"});
    Result r;
    if (method != "direct") r.fields["value"] = ramanujan_closed(q, a);
    if (method != "closed") {
        if (q.value() > max_ramanujan_direct) throw validation_error("q", "direct sum limited to q <= 10^6");
        check_budget(static_cast<double>(q.value()), job);
        const i64 d = ramanujan_direct(q.value(), a);
        if (method == "direct") r.fields["value"] = d;
        else {
            r.fields["direct"] = d;
            r.fields["agree"] = d == r.fields["value"].get<i64>();
        }
    }
    r.fields["method"] = method;
    return r;
}

inline Result cmd_salie(const Params& p, const JobSpec&) {
    const i64 a = p.get_i64("a"), b = p.get_i64("b");
    const u64 prime = p.get_u64("p", 3);
    if (!is_prime(prime)) throw validation_error("p", "must be an odd prime");
    const u64 n = p.get_u64("n", 2);
    if (n > 60 || std::pow(static_cast<double>(prime), static_cast<double>(n)) > 9e18)
        throw validation_error("n", "p^n must fit in 63 bits");
    const auto v = kloosterman_salie(a, b, prime, static_cast<unsigned>(n));
    Result r;
    r.fields["value"] = num(v.value);
    r.fields["abs_error"] = num(v.abs_error);
    r.fields["method"] = "salie";
    r.fields["residue"] = jacobi(static_cast<i64>(reduce(a, prime) * reduce(b, prime) % prime), prime) == 1;
    return r;
}

inline Result cmd_singular(const Params& p, const JobSpec& job) {
    const unsigned k = k_param(p, 3);
    const auto q = modulus(p);
    const u64 c = unit_param(p, "c", q);
    const i64 m = p.get_i64("m");
    const auto route = p.get_choice("route", {"both", "count", "sum"});
    double cost = 0.0;
    if (route != "sum") cost += convolution_cost(q.value(), k);
    if (route != "count") cost += sum_route_cost(q);
    check_budget(cost, job);
    const SingularParams params{k, c, m, q};
    Result r;
    std::optional<ExactRational> exact;
    if (route != "sum") {
        exact = kappa_exact(params);
        r.fields["kappa"] = exact->to_string();
        r.fields["kappa_value"] = num(exact->to_double());
    }
    if (route != "count") {
        const auto s = kappa_sum(params);
        r.fields["kappa_sum"] = num(s.value);
        r.fields["abs_error"] = num(s.abs_error);
        if (exact) r.fields["agree"] = s.agrees_with(exact->to_double(), 1e-8);
        for (u64 d : q.divisors()) {
            const auto a = A_k_direct(params, q.divisor(d));
            r.rows.push_back({{"r", d}, {"A_k", num(a.value)}, {"abs_error", num(a.abs_error)}});
        }
    }
    return r;
}

inline Result cmd_kappa_min(const Params& p, const JobSpec& job) {
    const unsigned k = k_param(p, 3);
    const auto q = modulus(p);
    if (q.value() % 2 == 0 || q.value() % 3 == 0) throw validation_error("q", "must be coprime to 6");
    const auto classes = p.get_choice("classes", {"residue", "all"});
    KappaMinResult res;
    try {
        res = kappa_min_scan(k, q, job.budget, job.threads);
    } catch (const error& e) {
        if (e.code() == errc::budget_exceeded) throw validation_error("budget", e.what());
        throw;
    }
    const bool residue = classes == "residue";
    const auto& min = residue ? res.residue_min : res.min_value;
    Result r;
    r.fields["classes"] = classes;
    r.fields["min"] = min.to_string();
    r.fields["min_value"] = num(min.to_double());
    r.fields["argmin_c"] = residue ? res.residue_argmin_c : res.argmin_c;
    r.fields["argmin_m"] = residue ? res.residue_argmin_m : res.argmin_m;
    r.fields["floor"] = num(res.floor);
    r.fields["satisfied"] = residue ? res.residue_satisfied : res.satisfied;
    r.fields["residue_min"] = res.residue_min.to_string();
    r.fields["all_units_min"] = res.min_value.to_string();
    r.fields["mode"] = res.stratified ? "stratified" : "full";
    r.fields["cost"] = num(res.cost);
    return r;
}

inline Result cmd_count_solutions(const Params& p, const JobSpec& job) {
    const unsigned k = k_param(p, 1);
    const auto q = modulus(p);
    const u64 c = unit_param(p, "c", q);
    const i64 m = p.get_i64("m");
    Result r;
    double cost = convolution_cost(q.value(), k);
    if (p.has("N")) {
        const u64 N = p.get_u64("N", 2);
        if (N > max_prime_sum_limit) throw validation_error("N", "must be at most 10^9");
        cost += static_cast<double>(N);
        check_budget(cost, job);
        const auto count = I_k_count(k, c, m, q.value(), N);
        u64 pi = 0;
        for_each_prime(N, [&](u64 prime) {
            if (q.value() % prime != 0) ++pi;
        });
        r.fields["variables"] = "primes";
        r.fields["count"] = count.str();
        r.fields["tuples"] = bigint(boost::multiprecision::pow(bigint(pi), k)).str();
    } else {
        check_budget(cost, job);
        const SingularParams params{k, c, m, q};
        const auto count = V_k_count(params);
        r.fields["variables"] = "units";
        r.fields["count"] = count.str();
        r.fields["tuples"] = bigint(boost::multiprecision::pow(bigint(q.phi()), k)).str();
        r.fields["kappa"] = kappa_from_count(count, q, k).to_string();
    }
    return r;
}

inline Result cmd_prime_sum(const Params& p, const JobSpec& job) {
    const i64 a = p.get_i64("a"), b = p.get_i64("b");
    const auto q = modulus(p);
    const u64 X = p.get_u64("X", 1);
    if (X > max_prime_sum_limit) throw validation_error("X", "must be at most 10^9");
    const auto weight = p.get_choice("weight", {"plain", "log", "mangoldt"});
    check_budget(static_cast<double>(X), job);
    const auto v = weight == "plain" ? W_q(a, b, q.value(), X)
                   : weight == "log" ? log_weighted_prime_sum(a, b, q.value(), X)
                                     : T_q(a, b, q.value(), X);
    Result r;
    r.fields["value_re"] = num(v.value_re);
    r.fields["value_im"] = num(v.value_im);
    r.fields["abs"] = num(v.abs());
    r.fields["abs_error"] = num(v.abs_error);
    r.fields["terms"] = v.terms;
    r.fields["weight"] = weight;
    return r;
}

inline Result cmd_envelope(const Params& p, const JobSpec& job) {
    const u64 lo = p.get_u64("q-lo", 50, 2), hi = p.get_u64("q-hi", 2000, 2);
    if (hi < lo) throw validation_error("q-hi", "must be at least q-lo");
    const double x = p.get_double("x-exponent", 1.5);
    if (x < 1.0 || x > 3.0) throw validation_error("x-exponent", "must lie in [1, 3]");
    const u64 count = p.get_u64("count", 100, 1);
    const double limit = p.get_double("limit", 100.0);
    const double top = std::pow(static_cast<double>(hi), x);
    if (top > static_cast<double>(max_prime_sum_limit)) throw validation_error("q-hi", "q-hi^x-exponent must be at most 10^9");
    check_budget(static_cast<double>(count) * top, job);
    const auto rep = envelope_check(envelope_samples(lo, hi, x, count, job.seed), limit, job.threads);
    Result r;
    r.fields["samples"] = rep.samples.size();
    r.fields["max_ratio"] = num(rep.max_ratio);
    r.fields["limit"] = num(rep.limit);
    r.fields["stable"] = rep.stable;
    for (const auto& s : rep.samples)
        r.rows.push_back({{"a", s.a},
                          {"b", s.b},
                          {"q", s.q},
                          {"X", s.X},
                          {"primes", s.primes},
                          {"abs_w", num(s.abs_w)},
                          {"delta", num(s.delta)},
                          {"ratio", num(s.ratio)},
                          {"in_range", s.in_range}});
    return r;
}

inline json dickman_row(double u) {
    json row{{"u", num(u)}, {"rho", num(dickman_rho(u))}};
    row["integral"] = u <= 20.0 ? num(rho_integral(u)) : json(nullptr);
    return row;
}

inline Result cmd_dickman(const Params& p, const JobSpec&) {
    const double umax = dickman_table().u_max();
    auto in_range = [&](const std::string& name, double v) {
        if (v < 0.0 || v > umax) throw validation_error(name, "must lie in [0, 50]");
        return v;
    };
    Result r;
    r.fields["richardson_gap"] = num(dickman_table().richardson_gap());
    if (p.has("u")) {
        const auto row = dickman_row(in_range("u", p.get_double("u")));
        for (const auto& [key, value] : row.items()) r.fields[key] = value;
        return r;
    }
    const double from = in_range("from", p.get_double("from", 0.0)), to = in_range("to", p.get_double("to", 10.0));
    if (to < from) throw validation_error("to", "must be at least from");
    const u64 points = p.get_u64("points", 11, 1);
    if (points > 100000) throw validation_error("points", "must be at most 10^5");
    for (u64 i = 0; i < points; ++i) {
        const double u = points == 1 ? from : from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1);
        r.rows.push_back(dickman_row(u));
    }
    return r;
}

inline Result cmd_primorial_sigma(const Params& p, const JobSpec& job) {
    const u64 X = p.get_u64("X", 2);
    if (X > max_primorial_X) throw validation_error("X", "must be at most 2000");
    const double A = p.get_double("A", 1.0);
    if (A <= 0.0 || A > 20.0) throw validation_error("A", "must lie in (0, 20]");
    const double cost = std::pow(static_cast<double>(X), A);
    if (cost > max_primorial_threshold) throw validation_error("A", "X^A must be at most 10^7");
    check_budget(cost, job);
    const auto s = primorial_sigma(X, A);
    Result r;
    r.fields["sigma"] = num(s.sigma);
    r.fields["S"] = num(s.S);
    r.fields["S1"] = num(s.S1);
    r.fields["prediction"] = num(s.prediction);
    r.fields["ratio"] = num(s.sigma / s.prediction);
    r.fields["threshold"] = num(s.threshold);
    r.fields["log_q"] = num(s.log_q);
    return r;
}

inline Result cmd_verify(const Params& p, const JobSpec& job) {
    std::vector<std::string> allowed{"all"};
    for (const auto& n : suite_names()) allowed.push_back(n);
    const auto suite = p.get_choice("suite", allowed);
    std::vector<std::string> run = suite == "all" ? suite_names() : std::vector<std::string>{suite};
    Result r;
    std::size_t passed = 0, total = 0;
    for (const auto& name : run) {
        const auto rep = verify_suite(name, job.seed, job.threads);
        for (const auto& c : rep.checks)
            r.rows.push_back({{"suite", rep.suite},
                              {"id", c.id},
                              {"anchor", c.anchor},
                              {"expected", rounded(c.expected)},
                              {"computed", rounded(c.computed)},
                              {"tolerance", num(c.tolerance)},
                              {"pass", c.pass}});
        passed += rep.passed();
        total += rep.checks.size();
    }
    r.fields["suite"] = suite;
    r.fields["passed"] = passed;
    r.fields["total"] = total;
    r.fields["pass"] = passed == total;
    r.exit_code = passed == total ? 0 : 1;
    return r;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

inline std::string csv_cell(const json& v) {
    std::string s = scalar_text(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string to_csv(const Result& r) {
    std::ostringstream os;
    auto line = [&](const json& obj, bool header) {
        bool first = true;
        for (const auto& [key, value] : obj.items()) {
            os << (first ? "" : ",") << (header ? csv_cell(key) : csv_cell(value));
            first = false;
        }
        os << '\n';
    };
    if (!r.rows.empty()) {
        line(r.rows.front(), true);
        for (const auto& row : r.rows) line(row, false);
    } else {
        line(r.fields, true);
        line(r.fields, false);
    }
    return os.str();
}

inline std::string to_text(const Result& r) {
    std::ostringstream os;
    for (const auto& [key, value] : r.fields.items()) os << key << ": " << scalar_text(value) << '\n';
    if (r.rows.empty()) return os.str();
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    std::vector<std::string> header;
    for (const auto& [key, value] : r.rows.front().items()) header.push_back(key);
    cells.push_back(header);
    for (const auto& row : r.rows) {
        std::vector<std::string> line;
        for (const auto& [key, value] : row.items()) line.push_back(scalar_text(value));
        cells.push_back(std::move(line));
    }
    for (const auto& line : cells) {
        width.resize(std::max(width.size(), line.size()), 0);
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    os << '\n';
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << line[i];
            if (i + 1 < line.size()) os << std::string(width[i] - line[i].size() + 2, ' ');
        }
        os << '\n';
    }
    return os.str();
}

inline std::string to_json(const JobSpec& job, const Result& r) {
    json out;
    out["schema"] = schema_version;
    out["command"] = job.command;
    json params = json::object();
    for (const auto& [key, value] : job.parameters) params[key] = value;
    out["parameters"] = params;
    out["seed"] = job.seed;
    for (const auto& [key, value] : r.fields.items()) out[key] = value;
    if (!r.rows.empty()) out["rows"] = r.rows;
    return out.dump(2) + "\n";
}

} // namespace detail

/// Executes a job; never throws.
inline RunOutput run(const JobSpec& job) {
    using namespace detail;
    using Handler = Result (*)(const Params&, const JobSpec&);
    static const std::map<std::string, Handler> handlers{
        {"kloosterman", cmd_kloosterman}, {"ramanujan", cmd_ramanujan},
        {"salie", cmd_salie},             {"singular", cmd_singular},
        {"kappa-min", cmd_kappa_min},     {"count-solutions", cmd_count_solutions},
        {"prime-sum", cmd_prime_sum},     {"envelope", cmd_envelope},
        {"dickman", cmd_dickman},         {"primorial-sigma", cmd_primorial_sigma},
        {"verify", cmd_verify},
    };
    RunOutput out;
    const CommandInfo* info = nullptr;
    for (const auto& c : commands())
        if (c.name == job.command) info = &c;
    if (!info) {
        out.exit_code = 2;
        out.err = "unknown command '" + job.command + "'\n";
        return out;
    }
    try {
        if (job.threads == 0) throw validation_error("threads", "must be at least 1");
        if (!(job.budget > 0.0)) throw validation_error("budget", "must be positive");
        const Params params(*info, job.parameters);
        const Result r = handlers.at(job.command)(params, job);
        out.exit_code = r.exit_code;
        switch (job.output) {
        case OutputFormat::json: out.out = to_json(job, r); break;
        case OutputFormat::csv: out.out = to_csv(r); break;
        case OutputFormat::text: out.out = to_text(r); break;
        }
    } catch (const validation_error& e) {
        out.exit_code = 2;
        out.err = std::string(e.what()) + "\n";
    } catch (const error& e) {
        out.exit_code = 2;
        out.err = job.command + ": " + e.what() + "\n";
    }
    return out;
}

/// Builds a job from argv (flags and an optional key=value config), or the output to print instead.
inline std::variant<JobSpec, RunOutput> parse_command_line(int argc, const char* const* argv) {
    CLI::App app{"Kloosterman sums, singular series and smooth-number tools", "kloos"};
    app.set_config("--config", "", "key=value file; [command] sections or command.key for command parameters");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    JobSpec job;
    std::string output = "json";
    app.add_option("--output", output, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", job.seed, "seed for sampled sweeps");
    app.add_option("--threads", job.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", job.budget, "largest predicted cost in word operations")->check(CLI::PositiveNumber);

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> options;
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : commands()) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        subs[c.name] = sub;
        for (const auto& param : c.params) {
            auto* opt = sub->add_option("--" + param.name, values[c.name][param.name], param.help);
            options[c.name].push_back({param.name, opt});
        }
    }
    RunOutput out;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out.out = app.help();
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) out.out = sub->help();
        return out;
    } catch (const CLI::CallForAllHelp&) {
        out.out = app.help("", CLI::AppFormatMode::All);
        return out;
    } catch (const CLI::ParseError& e) {
        out.exit_code = 2;
        out.err = std::string(e.get_name()) + ": " + e.what() + "\n";
        return out;
    }
    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        job.command = name;
        for (const auto& [param, opt] : options[name])
            if (opt->count() > 0) job.parameters[param] = values[name][param];
    }
    job.output = output == "csv" ? OutputFormat::csv : output == "text" ? OutputFormat::text : OutputFormat::json;
    return job;
}

/// Process entry point: parses, runs, prints, returns the exit status.
inline int main_entry(int argc, const char* const* argv) {
    const auto parsed = parse_command_line(argc, argv);
    const RunOutput out = std::holds_alternative<RunOutput>(parsed) ? std::get<RunOutput>(parsed)
                                                                     : run(std::get<JobSpec>(parsed));
    std::fputs(out.out.c_str(), stdout);
    std::fputs(out.err.c_str(), stderr);
    return out.exit_code;
}

} // namespace kloos::cli
