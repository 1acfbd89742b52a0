#include "mayer/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace mayer {

namespace {

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_whitespace(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

double parse_double(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != token.size() || std::isnan(v)) {
    throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + token + "'");
  }
  return v;
}

bool is_integer_literal(const std::string& token) {
  if (token.empty()) return false;
  std::size_t start = (token[0] == '-' || token[0] == '+') ? 1 : 0;
  if (start == token.size()) return false;
  return std::all_of(token.begin() + static_cast<long>(start), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

PointCloud parse_xyz(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("XYZ: missing atom count");
  ++line_no;
  const std::string count_text = trim(line);
  if (!is_integer_literal(count_text)) throw ParseError("XYZ: first line must be the atom count");
  const long count = std::stol(count_text);
  if (count < 1) throw ParseError("XYZ: needs at least one atom");
  if (!std::getline(in, line)) throw ParseError("XYZ: missing comment line");
  ++line_no;

  PointCloud cloud;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (static_cast<long>(cloud.size()) == count) {
      throw ParseError("XYZ: more atom lines than the declared count " + std::to_string(count));
    }
    if (tokens.size() < 4) throw ParseError("XYZ line " + std::to_string(line_no) + ": expected 'Element x y z'");
    cloud.labels.push_back(tokens[0]);
    cloud.points.push_back(
        {parse_double(tokens[1], line_no), parse_double(tokens[2], line_no), parse_double(tokens[3], line_no)});
  }
  if (static_cast<long>(cloud.size()) != count) {
    throw ParseError("XYZ: declared " + std::to_string(count) + " atoms but found " + std::to_string(cloud.size()));
  }
  return cloud;
}

PointCloud parse_xyz(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_xyz(in);
}

PointCloud parse_points(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    std::vector<double> point;
    std::stringstream fields(body);
    std::string field;
    while (std::getline(fields, field, ',')) point.push_back(parse_double(trim(field), line_no));
    if (!cloud.points.empty() && point.size() != cloud.points.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + ": ragged row (" + std::to_string(point.size()) +
                       " fields, expected " + std::to_string(cloud.points.front().size()) + ")");
    }
    cloud.points.push_back(std::move(point));
  }
  if (cloud.points.empty()) throw ParseError("points file contains no points");
  return cloud;
}

PointCloud parse_points(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_points(in);
}

FilteredComplex parse_complex(std::istream& in, std::vector<std::string>* warnings) {
  std::map<Simplex, double> explicit_values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_whitespace(strip_comment(line));
    if (tokens.empty()) continue;
    double value = 0.0;
    std::size_t first_vertex = 0;
    if (!is_integer_literal(tokens[0])) {
      value = parse_double(tokens[0], line_no);
      first_vertex = 1;
    }
    if (first_vertex == tokens.size()) throw ParseError("line " + std::to_string(line_no) + ": no vertices");
    std::vector<long> ids;
    for (std::size_t i = first_vertex; i < tokens.size(); ++i) {
      if (!is_integer_literal(tokens[i])) {
        throw ParseError("line " + std::to_string(line_no) + ": bad vertex id '" + tokens[i] + "'");
      }
      ids.push_back(std::stol(tokens[i]));
    }
    Simplex s = [&] {
      try {
        return simplex_new(ids);
      } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }();
    const auto [it, inserted] = explicit_values.emplace(s, value);
    if (!inserted && it->second != value) {
      throw ParseError("line " + std::to_string(line_no) + ": simplex listed twice with different values");
    }
  }

  // Explicit faces must not come later than explicit cofaces.
  for (const auto& [s, v] : explicit_values) {
    if (s.dimension() == 0) continue;
    std::vector<Simplex> frontier{s};
    while (!frontier.empty() && frontier.front().dimension() > 0) {
      std::vector<Simplex> next;
      for (const auto& t : frontier) {
        for (std::size_t i = 0; i <= static_cast<std::size_t>(t.dimension()); ++i) next.push_back(t.face(i));
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (const auto& f : next) {
        const auto found = explicit_values.find(f);
        if (found != explicit_values.end() && found->second > v) {
          throw ParseError("non-monotone filtration: a face has a larger value than its coface");
        }
      }
      frontier = std::move(next);
    }
  }

  // Close under faces; a missing face takes the minimum over its cofaces.
  std::map<Simplex, double> all = explicit_values;
  std::size_t added = 0;
  for (auto it = explicit_values.rbegin(); it != explicit_values.rend(); ++it) {
    std::vector<Simplex> stack{it->first};
    while (!stack.empty()) {
      Simplex t = std::move(stack.back());
      stack.pop_back();
      if (t.dimension() == 0) continue;
      const double tv = all.at(t);
      for (std::size_t i = 0; i <= static_cast<std::size_t>(t.dimension()); ++i) {
        Simplex f = t.face(i);
        const auto found = all.find(f);
        if (found == all.end()) {
          all.emplace(f, tv);
          ++added;
          stack.push_back(std::move(f));
        } else if (!explicit_values.contains(f) && tv < found->second) {
          found->second = tv;
          stack.push_back(std::move(f));
        }
      }
    }
  }
  if (added > 0) {
    const std::string message = "complex: added " + std::to_string(added) + " missing face(s)";
    if (warnings) warnings->push_back(message);
    else std::cerr << "warning: " << message << '\n';
  }

  std::vector<FilteredComplex::Entry> entries;
  entries.reserve(all.size());
  for (auto& [s, v] : all) entries.push_back({s, v});
  try {
    return FilteredComplex::from_simplices(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("complex: ") + e.what());
  }
}

FilteredComplex parse_complex(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  auto in = open(path);
  return parse_complex(in, warnings);
}

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

std::string serialize_complex(const FilteredComplex& k) {
  std::ostringstream out;
  out << "# value v0 ... vk\n";
  for (const auto& e : k.ordered()) {
    out << format_value(e.value);
    for (VertexId v : e.simplex.vertices()) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace mayer
