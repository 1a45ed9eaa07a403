#include "cli_support.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>

namespace superperiods::cli {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n\r"), b = s.find_last_not_of(" \t\n\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

// Splits at commas outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

mpz_class pow10(long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

mpq_class parse_decimal(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw InputError("empty number");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false, any = false;
  for (; pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'); ++pos) {
    if (s[pos] == '.') {
      if (dot) throw InputError("malformed number: " + raw);
      dot = true;
    } else {
      digits += s[pos];
      any = true;
      if (dot) ++frac;
    }
  }
  if (!any) throw InputError("malformed number: " + raw);
  long ex = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    std::string e = s.substr(pos + 1);
    if (e.empty() || e.find_first_not_of("+-0123456789") != std::string::npos) throw InputError("malformed exponent: " + raw);
    ex = std::stol(e);
    pos = s.size();
  }
  if (pos != s.size()) throw InputError("malformed number: " + raw);
  if (std::labs(ex) > 100000) throw InputError("exponent out of range: " + raw);
  mpq_class q(mpz_class(digits), 1);
  long shift = ex - frac;
  if (shift >= 0) q *= pow10(shift);
  else q /= pow10(-shift);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

mpq_class parse_rational(const std::string& raw) {
  auto slash = raw.find('/');
  if (slash == std::string::npos) return parse_decimal(raw);
  mpq_class den = parse_decimal(raw.substr(slash + 1));
  if (den == 0) throw InputError("division by zero in " + raw);
  mpq_class q = parse_decimal(raw.substr(0, slash)) / den;
  q.canonicalize();
  return q;
}

// Position of the sign separating real and imaginary parts, or npos.
std::size_t imag_split(const std::string& s) {
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') return k;
  }
  return std::string::npos;
}

std::string strip_outer_parens(std::string s) {
  s = trim(s);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool wraps = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s[k] == '(') ++depth;
      if (s[k] == ')') --depth;
      if (depth == 0 && k + 1 < s.size()) wraps = false;
    }
    if (!wraps) break;
    std::string inner = s.substr(1, s.size() - 2);
    if (split_top(inner, ',').size() != 1) break;
    s = trim(inner);
  }
  return s;
}

CurvePoint::Kind kind_of(const std::string& name) {
  if (name == "P") return CurvePoint::Kind::Ramification;
  if (name == "inf") return CurvePoint::Kind::Infinite;
  throw InputError("unknown point kind: " + name);
}

json report_json(const EdgeReport& r) {
  json j;
  j["scheme"] = scheme_name(r.scheme);
  j["points"] = r.points;
  j["h"] = r.h;
  j["r0"] = r.r0;
  json pw = json::array();
  for (auto& p : r.powers)
    pw.push_back({{"j", p.j}, {"lmax", p.lmax}, {"r", p.r}, {"M1", p.M1}, {"M2", p.M2}, {"B", p.B}, {"log2_error", p.log2_error}});
  j["powers"] = pw;
  return j;
}

bool int_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

ExactComplex parse_number(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    auto parts = split_top(s.substr(1, s.size() - 2), ',');
    if (parts.size() == 2) return {parse_rational(parts[0]), parse_rational(parts[1])};
    if (parts.size() == 1) return parse_number(parts[0]);
    throw InputError("malformed complex literal: " + raw);
  }
  if (!s.empty() && s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    std::size_t k = imag_split(body);
    mpq_class re = 0;
    std::string im = body;
    if (k != std::string::npos) {
      re = parse_rational(body.substr(0, k));
      im = body.substr(k);
    }
    if (im.empty() || im == "+") return {re, 1};
    if (im == "-") return {re, -1};
    return {re, parse_rational(im)};
  }
  return {parse_rational(s), 0};
}

std::vector<ExactComplex> parse_polynomial(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty polynomial");
  // split into signed terms at top-level + and -
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool sign = (ch == '+' || ch == '-') && depth == 0 && k > 0 && s[k - 1] != 'e' && s[k - 1] != 'E' &&
                s[k - 1] != '^' && s[k - 1] != '*' && s[k - 1] != '/';
    if (sign) {
      terms.push_back(cur);
      cur.clear();
    }
    cur += ch;
  }
  terms.push_back(cur);

  std::map<long, ExactComplex> acc;
  for (auto& t : terms) {
    if (t.empty() || t == "+" || t == "-") throw InputError("malformed polynomial: " + raw);
    ExactComplex coeff{1, 0};
    long power = 0;
    std::size_t xpos = std::string::npos;
    depth = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] == '(') ++depth;
      if (t[k] == ')') --depth;
      if (t[k] == 'x' && depth == 0) xpos = k;
    }
    std::string cpart = t;
    if (xpos != std::string::npos) {
      cpart = t.substr(0, xpos);
      std::string rest = t.substr(xpos + 1);
      if (rest.empty()) {
        power = 1;
      } else if (rest[0] == '^') {
        std::string e = rest.substr(1);
        if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos) throw InputError("bad exponent in " + t);
        if (e.size() > 6) throw InputError("exponent too large in " + t);
        power = std::stol(e);
      } else {
        throw InputError("malformed term: " + t);
      }
      if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
    }
    bool neg = false;
    if (!cpart.empty() && (cpart[0] == '+' || cpart[0] == '-')) {
      neg = cpart[0] == '-';
      cpart = cpart.substr(1);
    }
    if (!cpart.empty()) coeff = parse_number(cpart);
    else if (xpos == std::string::npos) throw InputError("malformed term: " + t);
    if (neg) coeff = {-coeff.re, -coeff.im};
    auto& slot = acc[power];
    slot.re += coeff.re;
    slot.im += coeff.im;
  }
  long deg = acc.rbegin()->first;
  std::vector<ExactComplex> out(deg + 1, ExactComplex{0, 0});
  for (auto& [k, v] : acc) out[k] = v;
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

std::vector<ExactComplex> parse_roots(const std::string& raw) {
  std::vector<std::string> parts;
  for (auto& p : split_top(raw, ',')) {
    // also allow whitespace separation
    std::string cur;
    int depth = 0;
    for (char ch : p) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
        if (!cur.empty()) parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
  }
  if (parts.empty()) throw InputError("empty root list");
  std::vector<ExactComplex> poly{{1, 0}};
  for (auto& p : parts) {
    ExactComplex r = parse_number(p);
    std::vector<ExactComplex> next(poly.size() + 1, ExactComplex{0, 0});
    for (std::size_t k = 0; k < poly.size(); ++k) {
      // (x - r) * poly
      next[k + 1].re += poly[k].re;
      next[k + 1].im += poly[k].im;
      next[k].re -= r.re * poly[k].re - r.im * poly[k].im;
      next[k].im -= r.re * poly[k].im + r.im * poly[k].re;
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<ParsedTerm> parse_divisor(const std::string& raw) {
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char ch : raw) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  if (depth != 0) throw InputError("unbalanced parentheses in divisor");
  if (tokens.empty()) throw InputError("empty divisor");

  std::vector<ParsedTerm> out;
  for (auto& tok : tokens) {
    ParsedTerm t;
    std::string body = tok;
    auto star = tok.find('*');
    if (star != std::string::npos && (tok[0] != '(' || star < tok.find('('))) {
      std::string c = tok.substr(0, star);
      if (c.empty() || c.find_first_not_of("+-0123456789") != std::string::npos || c == "+" || c == "-")
        throw InputError("divisor coefficient must be an integer: " + tok);
      t.coeff = std::stol(c);
      body = tok.substr(star + 1);
    } else {
      t.coeff = 1;
      if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        if (body[0] == '-') t.coeff = -1;
        body = body.substr(1);
      }
    }
    if (!body.empty() && body.front() == '(') {
      if (body.back() != ')') throw InputError("malformed point: " + tok);
      auto xy = split_top(body.substr(1, body.size() - 2), ',');
      if (xy.size() != 2) throw InputError("point must be (x,y): " + tok);
      t.kind = CurvePoint::Kind::Finite;
      t.x = parse_number(strip_outer_parens(xy[0]));
      t.y = parse_number(strip_outer_parens(xy[1]));
    } else {
      std::size_t k = 0;
      while (k < body.size() && std::isalpha(static_cast<unsigned char>(body[k]))) ++k;
      t.kind = kind_of(body.substr(0, k));
      std::string idx = body.substr(k);
      if (!idx.empty() && idx.front() == '<' && idx.back() == '>') idx = idx.substr(1, idx.size() - 2);
      if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad point index: " + tok);
      t.index = std::stoi(idx);
    }
    out.push_back(t);
  }
  return out;
}

CurvePoint resolve_finite(const Curve& c, const ExactComplex& x, const ExactComplex& y) {
  long prec = c.prec();
  Complex xb = to_ball(x, prec), yb = to_ball(y, prec);
  Complex fx = c.f(xb);
  if (fx.contains_zero()) throw InputError("finite point lies over a branch point; use P<k>");
  // user points live on y^m = leading * f(x); the library works with monic f
  Complex scale = principal_root(c.leading(), c.m());
  Complex ym = yb / scale;
  double rel = abs(pow(ym, c.m()) - fx).upper_double() / std::max(1.0, abs(fx).to_double());
  if (!(rel < 1e-6)) throw InputError("point (x, y) is not on the curve");
  Complex base = principal_root(fx, c.m());
  int best = 0;
  double bestd = INFINITY;
  for (int l = 0; l < c.m(); ++l) {
    double d = std::abs((base * c.zeta(l)).to_cdouble() - ym.to_cdouble());
    if (d < bestd) bestd = d, best = l;
  }
  return CurvePoint::finite(xb, base * c.zeta(best));
}

long target_bits(const JobConfig& cfg) { return cfg.bits > 0 ? cfg.bits : Precision::bits_from_digits(cfg.digits); }

long target_digits(const JobConfig& cfg) {
  return cfg.bits > 0 ? static_cast<long>(std::ceil(cfg.bits * std::log10(2.0))) : cfg.digits;
}

json complex_json(const Complex& z, long digits) {
  json j;
  j["re"] = z.re().mid_string(static_cast<int>(digits));
  j["im"] = z.im().mid_string(static_cast<int>(digits));
  j["rad"] = mag_string(z.rad());
  return j;
}

json matrix_json(const ComplexMatrix& a, long digits) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(complex_json(a(i, j), digits));
    rows.push_back(row);
  }
  return rows;
}

json int_matrix_json(const IntMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

int run_job(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    static const std::vector<std::string> commands{"periods", "tau", "homology", "abel-jacobi", "integration-report"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
      throw InputError("unknown command: " + cfg.command);
    if (cfg.poly.empty() == cfg.roots.empty()) throw InputError("give exactly one of --poly and --roots");
    if (cfg.command == "abel-jacobi" && cfg.divisor.empty()) throw InputError("abel-jacobi needs --divisor");
    if (!(cfg.lambda > 0 && cfg.lambda <= 1.5707963267948966 + 1e-12)) throw InputError("lambda must lie in (0, pi/2]");
    if (cfg.digits <= 0 && cfg.bits <= 0) throw InputError("precision must be positive");

    std::vector<ExactComplex> coeffs = cfg.poly.empty() ? parse_roots(cfg.roots) : parse_polynomial(cfg.poly);
    std::vector<ParsedTerm> divisor;
    if (cfg.command == "abel-jacobi") divisor = parse_divisor(cfg.divisor);

    PipelineOptions opt;
    opt.target_bits = target_bits(cfg);
    opt.lambda = cfg.lambda;
    if (cfg.tree == "capacity") opt.tree = TreeStrategy::Capacity;
    else if (cfg.tree == "euclidean") opt.tree = TreeStrategy::Euclidean;
    else throw InputError("tree must be capacity or euclidean");
    if (cfg.scheme == "auto") opt.scheme = SchemeKind::Auto;
    else if (cfg.scheme == "de") opt.scheme = SchemeKind::DoubleExponential;
    else if (cfg.scheme == "gc") opt.scheme = SchemeKind::GaussChebyshev;
    else throw InputError("scheme must be auto, de or gc");
    opt.threads = resolve_threads(cfg.threads);
    long digits = target_digits(cfg);

    json doc;
    with_precision_retry(opt, [&](int scale) {
      auto comp = compute_periods(cfg.m, coeffs, opt, scale);
      const Curve& c = comp->curve;
      json j;
      j["command"] = cfg.command;
      json cj;
      cj["m"] = c.m();
      cj["n"] = c.n();
      cj["genus"] = c.genus();
      cj["delta"] = c.delta();
      json bp = json::array();
      for (auto& x : c.branch_points()) bp.push_back(complex_json(x, digits));
      cj["branch_points"] = bp;
      j["curve"] = cj;
      j["precision"] = {{"target_bits", opt.target_bits},
                        {"digits", digits},
                        {"working_bits", comp->precision.working_bits},
                        {"guard_scale", scale}};

      const auto& p = comp->periods;
      json basis = json::array();
      for (auto& d : p.basis) basis.push_back({{"i", d.i}, {"j", d.j}});

      if (cfg.command == "periods") {
        j["basis"] = basis;
        j["omega_a"] = matrix_json(p.OA, digits);
        j["omega_b"] = matrix_json(p.OB, digits);
      } else if (cfg.command == "tau") {
        j["tau"] = matrix_json(p.tau, digits);
        j["symmetry_defect"] = mag_string(Mag::from_double(p.symmetry_defect));
        j["imaginary_part_positive_definite"] = true;
      } else if (cfg.command == "homology") {
        json edges = json::array();
        for (auto& e : comp->tree.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"capacity", e.capacity}});
        j["tree"] = {{"root", comp->tree.root}, {"strategy", cfg.tree}, {"edges", edges}};
        json cyc = json::array();
        for (auto& ci : cycle_indices(c.m(), comp->tree)) cyc.push_back({{"edge", ci.edge}, {"shift", ci.shift}});
        j["cycles"] = cyc;
        j["intersection_matrix"] = int_matrix_json(comp->intersections);
        const auto& s = comp->symplectic;
        j["symplectic_change"] = int_matrix_json(s.S);
        j["zero_block"] = s.zero_block;
        IntMatrix st = int_multiply(int_transpose(s.S), int_multiply(comp->intersections, s.S));
        j["symplectic_check"] = int_equal(st, standard_symplectic(s.genus, s.zero_block));
      } else if (cfg.command == "integration-report") {
        json edges = json::array();
        for (std::size_t e = 0; e < comp->tree.edges.size(); ++e) {
          json ej = report_json(comp->elementary.reports[e]);
          ej["a"] = comp->tree.edges[e].a;
          ej["b"] = comp->tree.edges[e].b;
          edges.push_back(ej);
        }
        j["edges"] = edges;
      } else {
        AbelJacobi aj(c, comp->tree, comp->elementary, comp->quad, opt.threads);
        Divisor d;
        for (auto& t : divisor) {
          CurvePoint pt;
          if (t.kind == CurvePoint::Kind::Finite) pt = resolve_finite(c, t.x, t.y);
          else if (t.kind == CurvePoint::Kind::Ramification) pt = CurvePoint::ramification(t.index);
          else pt = CurvePoint::infinite(t.index);
          d.terms.push_back({pt, t.coeff});
        }
        AJResult r = abel_jacobi(aj, p, d);
        for (auto& f : r.reduced)
          if (f.value.rad().log2_upper() > -static_cast<double>(opt.target_bits) / 2)
            throw PrecisionError("Abel-Jacobi image not accurate enough");
        json val = json::array(), red = json::array();
        for (auto& z : r.value) val.push_back(complex_json(z, digits));
        for (auto& f : r.reduced)
          red.push_back({{"value", f.value.mid_string(static_cast<int>(digits))},
                         {"rad", mag_string(f.value.rad())},
                         {"ambiguous", f.ambiguous}});
        j["basis"] = basis;
        j["integral"] = val;
        j["reduced"] = red;
      }
      doc = std::move(j);
    });
    out << doc.dump(2) << "\n";
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace superperiods::cli
