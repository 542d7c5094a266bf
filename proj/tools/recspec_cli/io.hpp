#ifndef RECSPEC_CLI_IO_HPP
#define RECSPEC_CLI_IO_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <recspec/recspec.hpp>

namespace recspec::cli {

using Json = nlohmann::ordered_json;

// ---- output -----------------------------------------------------------------

inline std::string format_double(double v)
{
  if (std::isnan(v))
    return "null";
  if (std::isinf(v))
    return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Pretty JSON with every float written to 17 significant digits. Key
/// order is insertion order, so equal inputs give byte-identical output.
inline void write_json(const Json& j, std::ostream& out, int indent = 0)
{
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first)
          out << ",\n";
        first = false;
        out << pad << Json(key).dump() << ": ";
        write_json(value, out, indent + 2);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_structured() && !(e.is_array() && e.size() == 2 && e[0].is_number());
      });
      if (flat) {
        out << "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k)
            out << ", ";
          write_json(j[k], out, indent + 2);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k)
          out << ",\n";
        out << pad;
        write_json(j[k], out, indent + 2);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(std::span<const Complex> v)
{
  Json a = Json::array();
  for (const auto& z : v)
    a.push_back(to_json(z));
  return a;
}

inline Json to_json(std::span<const double> v)
{
  Json a = Json::array();
  for (double x : v)
    a.push_back(x);
  return a;
}

template <typename T>
Json to_json(const Matrix<T>& m)
{
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(to_json(std::span<const T>(r.data(), r.size())));
  }
  return rows;
}

/// Plain-text rendering of a results object for --human.
inline void write_human(const Json& j, std::ostream& out, const std::string& prefix = "")
{
  // [re, im] pairs cannot be told apart from two-element real lists by shape
  static const std::set<std::string> complex_keys{
    "det", "dominant", "closed_form", "iterated", "roots", "coefficients",
    "eigenvalues", "char_poly", "characteristic_polynomial", "inverse"};

  auto scalar = [](const Json& v, bool complex) -> std::string {
    char buf[80];
    if (complex && v.is_array() && v.size() == 2) {
      const double re = v[0].get<double>(), im = v[1].get<double>();
      if (std::abs(im) < 1e-10 * (1 + std::abs(re)))
        std::snprintf(buf, sizeof buf, "%.10g", re);
      else
        std::snprintf(buf, sizeof buf, "%.10g%+.10gi", re, im);
      return buf;
    }
    if (v.is_number_float()) {
      std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
      return buf;
    }
    if (v.is_string())
      return v.get<std::string>();
    return v.dump();
  };
  auto depth = [](const Json& v, bool complex) {
    int d = 0;
    for (const Json* e = &v; e->is_array() && !e->empty(); e = &(*e)[0])
      ++d;
    return complex ? d - 1 : d;
  };

  if (!j.is_object()) {
    out << prefix << scalar(j, false) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    const bool complex = complex_keys.count(key) != 0;
    if (value.is_object()) {
      out << prefix << key << ":\n";
      write_human(value, out, prefix + "  ");
    } else if (value.is_array() && value.size() > 0 && depth(value, complex) >= 2 &&
               !value[0].is_object()) {
      out << prefix << key << ":\n";
      for (const auto& row : value) {
        out << prefix << "  ";
        for (const auto& e : row)
          out << scalar(e, complex) << "  ";
        out << "\n";
      }
    } else if (value.is_array() && depth(value, complex) == 1 && !value[0].is_object()) {
      out << prefix << key << ": ";
      for (const auto& e : value)
        out << scalar(e, complex) << "  ";
      out << "\n";
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      out << prefix << key << ":\n";
      for (const auto& e : value)
        write_human(e, out, prefix + "  ");
    } else {
      out << prefix << key << ": " << scalar(value, complex) << "\n";
    }
  }
}

// ---- input ------------------------------------------------------------------

inline std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw ArgumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_json(const std::string& text)
{
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      return c == '[' || c == '{';
  return false;
}

inline Json parse_json(const std::string& text, const std::string& what)
{
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(what + ": invalid JSON (" + e.what() + ")");
  }
}

/// A number, or a two-element [re, im] array.
inline Complex complex_from_json(const Json& v, const std::string& what)
{
  if (v.is_number())
    return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ArgumentError(what + ": expected a number or a [re, im] pair");
}

/// "1.5", "-2", "3+4i", "-0.5i", "1e-3-2.5e1i".
inline Complex parse_complex_token(const std::string& token)
{
  static const std::regex real_re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*$)");
  static const std::regex imag_re(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i\s*$)");
  static const std::regex both_re(
    R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
  std::smatch m;
  if (std::regex_match(token, m, real_re))
    return {std::stod(m[1]), 0.0};
  if (std::regex_match(token, m, both_re))
    return {std::stod(m[1]), std::stod(m[2])};
  if (std::regex_match(token, m, imag_re))
    return {0.0, m[1].matched ? std::stod(m[1]) : 1.0};
  throw ArgumentError("cannot parse number '" + token + "'");
}

inline std::vector<Complex> parse_complex_list(const std::string& text)
{
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(parse_complex_token(tok));
  if (out.empty())
    throw ArgumentError("empty number list");
  return out;
}

inline std::vector<Complex> read_nodes(const std::string& path)
{
  const Json j = parse_json(read_file(path), path);
  if (!j.is_array())
    throw ArgumentError(path + ": expected a JSON array of nodes");
  std::vector<Complex> nodes;
  for (const auto& v : j)
    nodes.push_back(complex_from_json(v, path));
  return nodes;
}

/// JSON 2-D array (entries real or [re, im]) or CSV of reals.
inline Matrix<Complex> read_complex_matrix(const std::string& path)
{
  const std::string text = read_file(path);
  std::vector<std::vector<Complex>> rows;
  if (looks_like_json(text)) {
    const Json j = parse_json(text, path);
    if (!j.is_array())
      throw ArgumentError(path + ": expected a 2-D array");
    for (const auto& r : j) {
      if (!r.is_array())
        throw ArgumentError(path + ": expected a 2-D array");
      std::vector<Complex> row;
      for (const auto& v : r)
        row.push_back(complex_from_json(v, path));
      rows.push_back(std::move(row));
    }
  } else {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t\r")] == '#')
        continue;
      std::vector<Complex> row;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ','))
        row.push_back(parse_complex_token(cell));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty())
    throw ArgumentError(path + ": matrix is empty");
  Matrix<Complex> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw ArgumentError(path + ": row " + std::to_string(i) + " has a different length");
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      m(i, k) = rows[i][k];
  }
  return m;
}

inline Matrix<double> read_real_matrix(const std::string& path)
{
  const auto c = read_complex_matrix(path);
  return c.map<double>([&](Complex z) {
    if (z.imag() != 0.0)
      throw ArgumentError(path + ": expected real entries");
    return z.real();
  });
}

/// JSON list of [i, j] pairs, or one whitespace-separated pair per line.
inline std::vector<Edge> read_edges(const std::string& path)
{
  const std::string text = read_file(path);
  std::vector<Edge> edges;
  auto index = [&](long long v) {
    if (v < 0)
      throw ArgumentError(path + ": negative vertex index");
    return static_cast<std::size_t>(v);
  };
  if (looks_like_json(text)) {
    const Json j = parse_json(text, path);
    if (!j.is_array())
      throw ArgumentError(path + ": expected a JSON list of pairs");
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw ArgumentError(path + ": every edge must be a pair of integers");
      edges.push_back({index(e[0].get<long long>()), index(e[1].get<long long>())});
    }
    return edges;
  }
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::stringstream ls(line);
    long long u = 0, v = 0;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest))
      throw ArgumentError(path + ": line " + std::to_string(lineno) + " is not an 'i j' pair");
    edges.push_back({index(u), index(v)});
  }
  return edges;
}

} // namespace recspec::cli

#endif // RECSPEC_CLI_IO_HPP
