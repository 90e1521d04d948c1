#include "entmono/report.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace entmono {

namespace {

struct Rational {
  std::int64_t num;
  std::int64_t den;

  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

Rational operator+(Rational a, Rational b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
Rational operator*(std::int64_t k, Rational a) { return {k * a.num, a.den}; }
Rational operator/(Rational a, std::int64_t k) { return {a.num, a.den * k}; }
bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }

struct RationalForms {
  std::string fef, fid, conc;
};

// Exact closed forms of the (1,3) reduction when gamma is a short fraction.
RationalForms rational_forms(double gamma) {
  const auto r = rational_approx(gamma);
  if (!r) return {};
  const Rational g(r->first, r->second);
  const Rational alpha = (Rational(1, 1) + (-1) * g) / 7;
  const Rational a_plus_g = alpha + g;
  const Rational two_alpha = 2 * alpha;
  const Rational top = a_plus_g < two_alpha ? two_alpha : a_plus_g;
  const Rational fid = (2 * top + Rational(1, 1)) / 3;
  Rational conc = 2 * top + Rational(-1, 1);
  if (conc.num < 0) conc = Rational(0, 1);
  return {top.str(), fid.str(), conc.str()};
}

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::optional<std::pair<std::int64_t, std::int64_t>> rational_approx(
    double x, std::int64_t max_denominator) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents h/k.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a_floor = std::floor(rest);
    if (std::abs(a_floor) > 1e12) break;
    const auto a = static_cast<std::int64_t>(a_floor);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-15) {
      return std::make_pair(h1, k1);
    }
    const double frac = rest - a_floor;
    if (frac < 1e-300) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

std::string counterexample_csv(const std::vector<CounterexampleRow>& rows) {
  std::ostringstream out;
  out << kCounterexampleCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto forms = rational_forms(r.gamma);
    out << format_full(r.gamma) << ',' << format_full(r.alpha) << ',' << format_full(r.F_1_23)
        << ',' << format_full(r.F_12) << ',' << format_full(r.F_13) << ','
        << format_full(r.F_13_closed) << ',' << format_full(r.f_1_23) << ','
        << format_full(r.f_13) << ',' << format_full(r.f_13_closed) << ','
        << format_full(r.C_13) << ',' << format_full(r.C_13_closed) << ','
        << flag(r.fef_violated) << ',' << flag(r.fid_violated) << ','
        << flag(r.strictness_proxy) << ',' << flag(r.unclamped_lhs_below_13) << ','
        << forms.fef << ',' << forms.fid << ',' << forms.conc << ','
        << (r.error ? csv_escape(*r.error) : "") << '\n';
  }
  return out.str();
}

std::string counterexample_json(const std::vector<CounterexampleRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto forms = rational_forms(r.gamma);
    nlohmann::ordered_json o;
    o["gamma"] = r.gamma;
    o["alpha"] = r.alpha;
    o["F_1_23"] = r.F_1_23;
    o["F_12"] = r.F_12;
    o["F_13"] = r.F_13;
    o["F_13_closed"] = r.F_13_closed;
    o["f_1_23"] = r.f_1_23;
    o["f_13"] = r.f_13;
    o["f_13_closed"] = r.f_13_closed;
    o["C_13"] = r.C_13;
    o["C_13_closed"] = r.C_13_closed;
    o["fef_violated"] = r.fef_violated;
    o["fid_violated"] = r.fid_violated;
    o["strictness_proxy"] = r.strictness_proxy;
    o["unclamped_lhs_below_13"] = r.unclamped_lhs_below_13;
    o["F_13_rational"] = forms.fef;
    o["f_13_rational"] = forms.fid;
    o["C_13_rational"] = forms.conc;
    o["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string counterexample_table(const std::vector<CounterexampleRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%9s %9s %9s %9s %9s %9s %9s  %-6s %-6s %-6s\n", "gamma",
                "alpha", "F_1_23", "F_13", "f_1_23", "f_13", "C_13", "F-viol", "f-viol",
                "strict");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%9.6f %9.6f %9.6f %9.6f %9.6f %9.6f %9.6f  %-6s %-6s %-6s",
                  r.gamma, r.alpha, r.F_1_23, r.F_13, r.f_1_23, r.f_13, r.C_13,
                  flag(r.fef_violated), flag(r.fid_violated), flag(r.strictness_proxy));
    out << line;
    if (r.error) out << "  error: " << *r.error;
    out << '\n';
  }
  return out.str();
}

}  // namespace entmono
