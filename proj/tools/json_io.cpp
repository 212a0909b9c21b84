#include "json_io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "scx/logmath.hpp"

namespace scx::cli {

namespace {

double number(const Json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw InvalidInput(std::string(what) + ": '" + s + "' is not a decimal number");
    return x;
  }
  throw InvalidInput(std::string(what) + ": expected a number or decimal string");
}

std::vector<double> numbers(const Json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const Json& e : v) out.push_back(number(e, what));
  return out;
}

std::vector<std::string> labels(const Json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) return default_labels(n);
  std::vector<std::string> out;
  for (const Json& e : j.at(key)) {
    if (e.is_string()) out.push_back(e.get<std::string>());
    else out.push_back(e.dump());
  }
  if (out.size() != n)
    throw InvalidInput(std::string(key) + ": expected " + std::to_string(n) + " labels");
  return out;
}

std::vector<std::vector<double>> rows_of(const Json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw InvalidInput(std::string(what) + ": expected a nonempty array of rows");
  std::vector<std::vector<double>> m;
  for (const Json& r : v) m.push_back(numbers(r, what));
  for (const auto& r : m)
    if (r.size() != m[0].size()) throw InvalidInput(std::string(what) + ": ragged rows");
  return m;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidInput(source + ": line " + std::to_string(line) + ", column " +
                       std::to_string(col) + ": invalid JSON");
  }
}

Dist dist_from_json(const Json& j) {
  std::vector<double> w = numbers(j.at("weights"), "weights");
  bool sub = j.value("subnormalized", false);
  std::vector<std::string> l = labels(j, "labels", w.size());
  return Dist(std::move(l), std::move(w), sub);
}

JointDist joint_from_json(const Json& j) {
  auto m = rows_of(j.at("matrix"), "matrix");
  std::vector<double> flat;
  for (const auto& r : m) flat.insert(flat.end(), r.begin(), r.end());
  std::vector<std::string> rl = labels(j, "row_labels", m.size());
  std::vector<std::string> cl = labels(j, "col_labels", m[0].size());
  return JointDist(std::move(rl), std::move(cl), std::move(flat));
}

HermitianOp op_from_json(const Json& j) {
  int d = j.at("dim").get<int>();
  auto re = rows_of(j.at("re"), "re");
  std::vector<std::vector<double>> im;
  if (j.contains("im")) im = rows_of(j.at("im"), "im");
  if (static_cast<int>(re.size()) != d || static_cast<int>(re[0].size()) != d)
    throw InvalidInput("re: expected a " + std::to_string(d) + "x" + std::to_string(d) +
                       " matrix");
  if (!im.empty() && (static_cast<int>(im.size()) != d || static_cast<int>(im[0].size()) != d))
    throw InvalidInput("im: shape does not match dim");
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = {re[r][c], im.empty() ? 0.0 : im[r][c]};
  return HermitianOp(m);
}

Input parse_input(const Json& j) {
  if (!j.is_object()) throw InvalidInput("input: expected a JSON object");
  try {
    if (j.contains("matrix")) return joint_from_json(j);
    if (j.contains("weights")) return dist_from_json(j);
    if (j.contains("dim")) return op_from_json(j);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("input: ") + e.what());
  }
  throw InvalidInput("input: need one of 'weights', 'matrix' or 'dim'");
}

Input load_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open input file " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_input(parse_json_text(text, path));
}

Json to_json(const Dist& d) {
  Json j{{"labels", d.labels()}, {"weights", d.weights()}};
  if (d.subnormalized()) j["subnormalized"] = true;
  return j;
}

Json to_json(const JointDist& jd) {
  Json m = Json::array();
  for (std::size_t x = 0; x < jd.rows(); ++x) {
    Json row = Json::array();
    for (std::size_t a = 0; a < jd.cols(); ++a) row.push_back(jd(x, a));
    m.push_back(row);
  }
  return {{"row_labels", jd.row_labels()}, {"col_labels", jd.col_labels()}, {"matrix", m}};
}

Json to_json(const HermitianOp& h) {
  Json re = Json::array(), im = Json::array();
  for (int r = 0; r < h.dim(); ++r) {
    Json a = Json::array(), b = Json::array();
    for (int c = 0; c < h.dim(); ++c) {
      a.push_back(h.matrix()(r, c).real());
      b.push_back(h.matrix()(r, c).imag());
    }
    re.push_back(a);
    im.push_back(b);
  }
  return {{"dim", h.dim()}, {"re", re}, {"im", im}};
}

}  // namespace scx::cli
