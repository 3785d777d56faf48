#include "dualalpha/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

namespace dualalpha {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

double parse_real(std::string_view token, const std::string& name, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
    fail(name, line, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

template <class Int>
Int parse_int(std::string_view token, const std::string& name, std::size_t line) {
  Int value{};
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || end != token.data() + token.size()) {
    fail(name, line, "not an integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

WeightedPoints read_points(std::istream& points, std::istream* weights,
                           const std::string& points_name, const std::string& weights_name) {
  std::vector<double> values;
  std::size_t arity = 0;
  std::size_t count = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(points, line); ++lineno) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split(body, ',');
    if (count == 0) {
      arity = fields.size();
    } else if (fields.size() != arity) {
      fail(points_name, lineno,
           "expected " + std::to_string(arity) + " fields, found " + std::to_string(fields.size()));
    }
    for (auto f : fields) values.push_back(parse_real(f, points_name, lineno));
    ++count;
  }
  if (count == 0) throw ParseError(points_name + ": no points");

  WeightedPoints out;
  out.coords = Eigen::Map<const PointMatrix>(values.data(), static_cast<Eigen::Index>(count),
                                             static_cast<Eigen::Index>(arity));
  out.power = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(count));
  if (weights) {
    std::size_t n = 0;
    std::size_t last_line = 0;
    for (std::size_t lineno = 1; std::getline(*weights, line); ++lineno) {
      const auto body = trim(line);
      if (body.empty() || body.front() == '#') continue;
      last_line = lineno;
      if (n >= count) {
        fail(weights_name, lineno, "more weights than the " + std::to_string(count) + " points");
      }
      out.power[static_cast<Eigen::Index>(n++)] = parse_real(body, weights_name, lineno);
    }
    if (n != count) {
      fail(weights_name, last_line,
           "found " + std::to_string(n) + " weights for " + std::to_string(count) + " points");
    }
  }
  if (!out.coords.allFinite() || !out.power.allFinite()) {
    throw ParseError(points_name + ": non-finite value");
  }
  return out;
}

WeightedPoints parse_points(const std::filesystem::path& points,
                            const std::optional<std::filesystem::path>& weights) {
  auto in = open_input(points);
  if (!weights) return read_points(in, nullptr, points.string());
  auto win = open_input(*weights);
  return read_points(in, &win, points.string(), weights->string());
}

void RunConfig::validate() const {
  if (alpha.has_value() == radius.has_value()) {
    throw std::invalid_argument("exactly one of alpha and radius is required");
  }
  if (radius && weights_path) {
    throw std::invalid_argument("radius is only defined for unweighted points; use alpha");
  }
  if (radius && !(*radius >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  if (alpha && !std::isfinite(*alpha)) throw std::invalid_argument("alpha must be finite");
  if (max_dim < 0) throw std::invalid_argument("dimension must be nonnegative");
  if (threads == 0) throw std::invalid_argument("thread count must be positive");
}

double RunConfig::cutoff() const {
  validate();
  return alpha ? *alpha : *radius * *radius;
}

BuildParams RunConfig::build_params() const {
  BuildParams params;
  params.max_dim = max_dim;
  params.tol = tol;
  params.threads = threads;
  return params;
}

WeightedPoints RunConfig::load_points() const {
  WeightedPoints points = parse_points(points_path, weights_path);
  points.a1 = cutoff();
  return points;
}

std::string format_real(double value) {
  value += 0.0;  // -0 -> +0
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, end);
}

void write_complex(const ComplexFile& file, std::ostream& out) {
  out << "#alpha v1\n#ambient " << file.ambient_dim << "\n#a1 " << format_real(file.a1) << '\n';
  const FilteredComplex& X = file.complex;
  std::string line;
  for (int k = 0; k <= X.dimension(); ++k) {
    auto s = X.simplices(k);
    auto w = X.weights(k);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return w[a] != w[b] ? w[a] < w[b] : s[a] < s[b];
    });
    for (std::size_t i : order) {
      line = std::to_string(k);
      line += ' ';
      line += format_real(w[i]);
      for (Vertex v : s[i].vertices()) {
        line += ' ';
        line += std::to_string(v);
      }
      if (file.witness) {
        for (double y : file.witness->at(s[i])) {
          line += ' ';
          line += format_real(y);
        }
      }
      line += '\n';
      out << line;
    }
  }
}

void write_complex(const ComplexFile& file, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_complex(file, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ComplexFile read_complex(std::istream& in, const std::string& name) {
  ComplexFile file;
  std::string line;
  std::size_t lineno = 0;
  bool seen_magic = false;
  bool seen_ambient = false;
  std::optional<bool> with_witness;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto t = tokens(body.substr(1));
      if (t.empty()) continue;
      if (t[0] == "alpha") {
        if (t.size() != 2 || t[1] != "v1") fail(name, lineno, "unsupported format version");
        seen_magic = true;
      } else if (t[0] == "ambient" && t.size() == 2) {
        file.ambient_dim = parse_int<std::size_t>(t[1], name, lineno);
        seen_ambient = true;
      } else if (t[0] == "a1" && t.size() == 2) {
        file.a1 = parse_real(t[1], name, lineno);
      }
      continue;
    }
    if (!seen_magic) fail(name, lineno, "missing '#alpha v1' header");
    if (!seen_ambient) fail(name, lineno, "missing '#ambient' header");
    const auto t = tokens(body);
    if (t.size() < 3) fail(name, lineno, "truncated simplex line");
    const int k = parse_int<int>(t[0], name, lineno);
    if (k < 0) fail(name, lineno, "negative dimension");
    const std::size_t nv = static_cast<std::size_t>(k) + 1;
    const std::size_t rest = t.size() - 2 - std::min(t.size() - 2, nv);
    if (t.size() < 2 + nv || (rest != 0 && rest != file.ambient_dim)) {
      fail(name, lineno, "expected " + std::to_string(nv) + " vertices and 0 or " +
                             std::to_string(file.ambient_dim) + " witness coordinates");
    }
    const bool has_witness = rest != 0;
    if (with_witness && *with_witness != has_witness) {
      fail(name, lineno, "witness coordinates on some lines only");
    }
    with_witness = has_witness;
    if (has_witness && !file.witness) file.witness.emplace(file.ambient_dim);

    const double w = parse_real(t[1], name, lineno);
    std::vector<Vertex> verts;
    for (std::size_t i = 0; i < nv; ++i) verts.push_back(parse_int<Vertex>(t[2 + i], name, lineno));
    try {
      Simplex s(std::move(verts));
      if (has_witness) {
        Eigen::VectorXd y(static_cast<Eigen::Index>(file.ambient_dim));
        for (std::size_t i = 0; i < file.ambient_dim; ++i) {
          y[static_cast<Eigen::Index>(i)] = parse_real(t[2 + nv + i], name, lineno);
        }
        file.witness->set(s, std::move(y));
      }
      file.complex.insert(std::move(s), w);
    } catch (const std::invalid_argument& e) {
      fail(name, lineno, e.what());
    }
  }
  if (!seen_magic) throw ParseError(name + ": missing '#alpha v1' header");
  return file;
}

ComplexFile read_complex(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_complex(in, path.string());
}

void write_off(const BarycentricEmbedding& embedding, std::ostream& out) {
  const auto m = embedding.coordinates.cols();
  if (m > 3) {
    throw std::invalid_argument("OFF export needs ambient dimension <= 3, got " +
                                std::to_string(m));
  }
  std::size_t faces = 0;
  for (std::size_t k = 1; k < std::min<std::size_t>(embedding.flags.size(), 3); ++k) {
    faces += embedding.flags[k].size();
  }
  out << "OFF\n" << embedding.vertices.size() << ' ' << faces << " 0\n";
  for (Eigen::Index i = 0; i < embedding.coordinates.rows(); ++i) {
    for (Eigen::Index c = 0; c < 3; ++c) {
      if (c) out << ' ';
      out << format_real(c < m ? embedding.coordinates(i, c) : 0.0);
    }
    out << '\n';
  }
  for (std::size_t k = 1; k < std::min<std::size_t>(embedding.flags.size(), 3); ++k) {
    for (const auto& chain : embedding.flags[k]) {
      out << chain.size();
      for (std::size_t v : chain) out << ' ' << v;
      out << '\n';
    }
  }
}

}  // namespace dualalpha
