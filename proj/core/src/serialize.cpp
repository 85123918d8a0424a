#include "framelet/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "framelet/error.hpp"

namespace framelet {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  const std::string p = path.empty() ? key : path + "." + key;
  if (it == j.end()) field_error(p, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<int>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array");
  return j;
}

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back({c.real(), c.imag()});
  return a;
}

std::vector<cplx> read_complex_array(const json& j, const std::string& path) {
  std::vector<cplx> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string p = index(path, i);
    const auto& e = a[i];
    if (e.is_number()) {
      out.emplace_back(e.get<double>(), 0.0);
      continue;
    }
    if (!e.is_array() || e.size() != 2) field_error(p, "expected [re, im]");
    out.emplace_back(number(e[0], index(p, 0)), number(e[1], index(p, 1)));
  }
  return out;
}

std::vector<double> read_real_array(const json& j, const std::string& path) {
  std::vector<double> out;
  const auto& a = array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], index(path, i)));
  return out;
}

json poly_json(const TrigPoly& p) { return {{"m_min", p.m_min()}, {"coeffs", complex_array(p.coeffs())}}; }

TrigPoly poly_from(const json& j, const std::string& path) {
  const int m_min = integer(member(j, "m_min", path), join(path, "m_min"));
  auto coeffs = read_complex_array(member(j, "coeffs", path), join(path, "coeffs"));
  if (coeffs.empty()) field_error(join(path, "coeffs"), "must not be empty");
  return TrigPoly(m_min, std::move(coeffs));
}

// Non-finite values have no JSON literal; they are written as null.
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Non-empty CSV rows with their 1-based line numbers; a first row that does
// not parse as numbers is treated as a header.
std::vector<std::pair<std::size_t, std::vector<double>>> numeric_rows(const std::string& text) {
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto cells = split(line);
    if (cells.size() == 1 && cells[0].empty()) continue;
    std::vector<double> vals;
    bool ok = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double v;
      if (!parse_double(cells[c], v)) {
        ok = false;
        if (!first) {
          throw ParseError("CSV line " + std::to_string(lineno) + ", column " + std::to_string(c + 1) +
                           ": not a number: '" + cells[c] + "'");
        }
        break;
      }
      vals.push_back(v);
    }
    const bool header = first && !ok;
    first = false;
    if (header) continue;
    rows.emplace_back(lineno, std::move(vals));
  }
  return rows;
}

}  // namespace

std::string to_json(const TrigPoly& p) { return poly_json(p).dump(2); }

TrigPoly trig_poly_from_json(const std::string& text) { return poly_from(parse(text), ""); }

std::string to_json(const PiecewiseLinearPeriodic& f) {
  return json{{"nodes", f.nodes()}, {"values", f.values()}}.dump(2);
}

PiecewiseLinearPeriodic polyline_from_json(const std::string& text) {
  const json j = parse(text);
  auto nodes = read_real_array(member(j, "nodes", ""), "nodes");
  auto values = read_real_array(member(j, "values", ""), "values");
  try {
    return PiecewiseLinearPeriodic(std::move(nodes), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string to_json(const MaskBundle& b) {
  json arr = json::array();
  const auto masks = b.all();
  for (std::size_t r = 0; r < masks.size(); ++r) {
    json rec = poly_json(masks[r]);
    rec["role"] = "m" + std::to_string(r);
    if (r == 0) rec["provenance"] = b.provenance;
    arr.push_back(std::move(rec));
  }
  return arr.dump(2);
}

MaskBundle bundle_from_json(const std::string& text) {
  const json j = parse(text);
  MaskBundle b;
  if (j.is_object()) {
    b.m0 = poly_from(j, "");
    return b;
  }
  const auto& arr = array(j, "<root>");
  if (arr.empty()) field_error("<root>", "bundle has no masks");
  for (std::size_t r = 0; r < arr.size(); ++r) {
    const std::string p = index("", r);
    const auto& role = member(arr[r], "role", p);
    if (!role.is_string() || role.get<std::string>() != "m" + std::to_string(r)) {
      field_error(join(p, "role"), "expected \"m" + std::to_string(r) + "\"");
    }
    TrigPoly m = poly_from(arr[r], p);
    if (r == 0) {
      b.m0 = std::move(m);
      if (auto it = arr[r].find("provenance"); it != arr[r].end() && it->is_string()) b.provenance = *it;
    } else {
      b.wavelet_masks.push_back(std::move(m));
    }
  }
  return b;
}

std::string to_json(const FilterCoeffs& f) {
  json taps = json::array();
  for (int m = f.m_min(); m <= -f.m_min(); ++m) {
    taps.push_back({{"m", m}, {"c", f.tap(m).real()}, {"c_im", f.tap(m).imag()}});
  }
  return json{{"j", f.j}, {"taps", taps}}.dump(2);
}

FilterCoeffs filter_from_json(const std::string& text) {
  const json j = parse(text);
  FilterCoeffs f;
  f.j = integer(member(j, "j", ""), "j");
  if (f.j < 1) field_error("j", "must be positive");
  const auto& taps = array(member(j, "taps", ""), "taps");
  f.taps.assign(static_cast<std::size_t>(4 * f.j - 1), 0.0);
  for (std::size_t i = 0; i < taps.size(); ++i) {
    const std::string p = index("taps", i);
    const int m = integer(member(taps[i], "m", p), join(p, "m"));
    if (m < f.m_min() || m > -f.m_min()) field_error(join(p, "m"), "outside -(2j-1)..(2j-1)");
    const double re = number(member(taps[i], "c", p), join(p, "c"));
    double im = 0.0;
    if (auto it = taps[i].find("c_im"); it != taps[i].end()) im = number(*it, join(p, "c_im"));
    f.taps[static_cast<std::size_t>(m - f.m_min())] = {re, im};
  }
  return f;
}

std::string to_csv(const FilterCoeffs& f) {
  std::string out = "m,c,c_im\n";
  for (int m = f.m_min(); m <= -f.m_min(); ++m) {
    out += std::to_string(m) + "," + fmt(f.tap(m).real()) + "," + fmt(f.tap(m).imag()) + "\n";
  }
  return out;
}

FilterCoeffs filter_from_csv(const std::string& text) {
  const auto rows = numeric_rows(text);
  if (rows.empty() || rows.size() % 2 == 0) throw ParseError("filter CSV needs 4j-1 rows");
  FilterCoeffs f;
  f.j = static_cast<int>((rows.size() + 1) / 4);
  if (static_cast<std::size_t>(4 * f.j - 1) != rows.size()) throw ParseError("filter CSV needs 4j-1 rows");
  f.taps.assign(rows.size(), 0.0);
  for (const auto& [line, vals] : rows) {
    if (vals.size() < 2 || vals.size() > 3) {
      throw ParseError("CSV line " + std::to_string(line) + ": expected m,c[,c_im]");
    }
    const int m = static_cast<int>(vals[0]);
    if (m != vals[0] || m < f.m_min() || m > -f.m_min()) {
      throw ParseError("CSV line " + std::to_string(line) + ": tap index out of range");
    }
    f.taps[static_cast<std::size_t>(m - f.m_min())] = {vals[1], vals.size() == 3 ? vals[2] : 0.0};
  }
  return f;
}

std::string to_json(const StabilityReport& r) {
  json roots = json::array();
  for (const auto& u : r.roots) {
    roots.push_back({{"angle", u.angle}, {"multiplicity", u.multiplicity}, {"ill_conditioned", u.ill_conditioned}});
  }
  json pairs = json::array();
  for (const auto& p : r.symmetric_pairs) pairs.push_back({p.first, p.second});
  json cycles = json::array();
  for (const auto& c : r.cycles) {
    cycles.push_back({{"betas", c.betas}, {"n", c.n}, {"m", c.m}, {"trivial", c.trivial}});
  }
  return json{{"roots", roots},
              {"symmetric_pairs", pairs},
              {"cycles", cycles},
              {"stable", r.stable},
              {"condition_flag", r.condition_flag},
              {"verdict", to_string(r.verdict)},
              {"subqmf_margin", r.subqmf_margin}}
      .dump(2);
}

std::string to_json(const DesignCertificate& c) {
  return json{{"epsilon", c.epsilon},
              {"n", c.n},
              {"j", c.j},
              {"err_f_f1", c.err_f_f1},
              {"err_f1_f2", c.err_f1_f2},
              {"err_f2_f3", c.err_f2_f3},
              {"err_f3_h", c.err_f3_h},
              {"stage_sum", c.stage_sum()},
              {"err_f_h", c.err_f_h},
              {"a", real(c.a)},
              {"rho", real(c.rho)},
              {"margin_certified", c.margin_certified},
              {"grid_size", c.grid_size}}
      .dump(2);
}

std::string to_json(const UepResidual& r) {
  return json{{"row1_grid", r.row1_grid},
              {"row2_grid", r.row2_grid},
              {"row1_coeff", r.row1_coeff},
              {"row2_coeff", r.row2_coeff}}
      .dump(2);
}

std::string to_json(const PrReport& r) {
  return json{{"max_error", r.max_error}, {"uep_residual", r.uep_residual}, {"bundle_suspect", r.bundle_suspect}}
      .dump(2);
}

std::string to_json(const DyadicFunction& d) {
  return json{{"level", d.level}, {"lo", d.lo}, {"hi", d.hi}, {"samples", complex_array(d.samples)}}.dump(2);
}

DyadicFunction dyadic_from_json(const std::string& text) {
  const json j = parse(text);
  DyadicFunction d;
  d.level = integer(member(j, "level", ""), "level");
  d.lo = integer(member(j, "lo", ""), "lo");
  d.hi = integer(member(j, "hi", ""), "hi");
  if (d.level < 0 || d.level > 24) field_error("level", "must be in [0, 24]");
  if (d.hi <= d.lo) field_error("hi", "must exceed lo");
  d.samples = read_complex_array(member(j, "samples", ""), "samples");
  if (d.samples.size() != d.expected_size()) {
    field_error("samples", "expected " + std::to_string(d.expected_size()) + " values");
  }
  return d;
}

std::string to_csv(const DyadicFunction& d) {
  std::string out = "x,re,im\n";
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    out += fmt(d.x(i)) + "," + fmt(d.samples[i].real()) + "," + fmt(d.samples[i].imag()) + "\n";
  }
  return out;
}

std::vector<cplx> signal_from_csv(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& [line, vals] : numeric_rows(text)) {
    if (vals.size() > 2) throw ParseError("CSV line " + std::to_string(line) + ": expected value[,imag]");
    out.emplace_back(vals[0], vals.size() == 2 ? vals[1] : 0.0);
  }
  return out;
}

std::string signal_to_csv(const std::vector<cplx>& x) {
  std::string out = "re,im\n";
  for (const auto& c : x) out += fmt(c.real()) + "," + fmt(c.imag()) + "\n";
  return out;
}

std::vector<std::pair<double, double>> samples_from_csv(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [line, vals] : numeric_rows(text)) {
    if (vals.size() != 2) throw ParseError("CSV line " + std::to_string(line) + ": expected angle,value");
    out.emplace_back(vals[0], vals[1]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!contents.empty() && contents.back() != '\n') out << '\n';
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace framelet
