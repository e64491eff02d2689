#include "lipjet/jet_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lipjet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field, const std::string& what) {
  throw InputError(origin + ": " + field + ": " + what);
}

const json& field(const json& doc, const char* name, const std::string& origin) {
  if (!doc.is_object()) fail(origin, "<root>", "expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) fail(origin, name, "missing");
  return *it;
}

int as_int(const json& v, const std::string& origin, const std::string& name) {
  if (!v.is_number_integer()) fail(origin, name, "expected an integer");
  return v.get<int>();
}

double as_number(const json& v, const std::string& origin, const std::string& name) {
  if (!v.is_number()) fail(origin, name, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(origin, name, "not finite");
  return x;
}

std::vector<double> as_numbers(const json& v, const std::string& origin, const std::string& name,
                               std::size_t expected) {
  if (!v.is_array()) fail(origin, name, "expected an array");
  if (v.size() != expected) {
    fail(origin, name, "expected " + std::to_string(expected) + " numbers, got " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], origin, name + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

LipFunction jet_from_json(const json& doc, const std::string& origin) {
  const json& schema = field(doc, "schema", origin);
  if (!schema.is_string() || schema.get<std::string>() != kJetSchema) {
    fail(origin, "schema", std::string("expected \"") + kJetSchema + "\"");
  }
  const int d = as_int(field(doc, "dim", origin), origin, "dim");
  const int m = as_int(field(doc, "codim", origin), origin, "codim");
  if (d < 1) fail(origin, "dim", "must be >= 1");
  if (m < 1) fail(origin, "codim", "must be >= 1");
  const double gamma = as_number(field(doc, "gamma", origin), origin, "gamma");
  if (!(gamma > 0.0)) fail(origin, "gamma", "must be > 0");
  const int k = level_of(gamma);

  const json& pts = field(doc, "points", origin);
  const json& jts = field(doc, "jets", origin);
  if (!pts.is_array() || pts.empty()) fail(origin, "points", "expected a nonempty array");
  if (!jts.is_array() || jts.size() != pts.size()) {
    fail(origin, "jets", "expected an array with one entry per point (" + std::to_string(pts.size()) + ")");
  }

  std::vector<Point> sites;
  std::vector<std::vector<SymForm>> jets(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string pname = "points[" + std::to_string(i) + "]";
    const std::vector<double> c = as_numbers(pts[i], origin, pname, static_cast<std::size_t>(d));
    sites.emplace_back(Eigen::Map<const Vec>(c.data(), d));

    const std::string jname = "jets[" + std::to_string(i) + "]";
    const json& levels = jts[i];
    if (!levels.is_array() || levels.size() != static_cast<std::size_t>(k + 1)) {
      fail(origin, jname, "expected " + std::to_string(k + 1) + " levels for gamma = " + std::to_string(gamma));
    }
    for (int l = 0; l <= k; ++l) {
      const std::string lname = jname + "[" + std::to_string(l) + "]";
      std::size_t rows = 0;
      try {
        rows = form_rows(d, l);
      } catch (const InputError& e) {
        fail(origin, lname, e.what());
      }
      std::vector<double> coeffs = as_numbers(levels[l], origin, lname, rows * static_cast<std::size_t>(m));
      try {
        jets[i].push_back(SymForm::from_coeffs(l, d, m, std::move(coeffs), kLoadSymmetryTolerance));
      } catch (const InputError& e) {
        fail(origin, lname, e.what());
      }
    }
  }
  try {
    return LipFunction(gamma, std::move(sites), std::move(jets));
  } catch (const InputError& e) {
    fail(origin, "<jet>", e.what());
  }
}

json jet_to_json(const LipFunction& f) {
  json pts = json::array();
  json jts = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec& c = f.site(i).coords();
    pts.push_back(std::vector<double>(c.data(), c.data() + c.size()));
    json levels = json::array();
    for (int l = 0; l <= f.k(); ++l) {
      const auto co = f.jet(i, l).coeffs();
      levels.push_back(std::vector<double>(co.begin(), co.end()));
    }
    jts.push_back(std::move(levels));
  }
  return json{{"schema", kJetSchema}, {"dim", f.dim()},     {"codim", f.codim()},
              {"gamma", f.gamma()},   {"points", std::move(pts)}, {"jets", std::move(jts)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON");
  }
}

void write_json_file(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write");
  out << doc.dump(1) << '\n';
}

LipFunction load_jet_file(const std::filesystem::path& path) {
  return jet_from_json(read_json_file(path), path.string());
}

void save_jet_file(const LipFunction& f, const std::filesystem::path& path) {
  write_json_file(jet_to_json(f), path);
}

std::vector<std::size_t> load_indices(const std::filesystem::path& path) {
  const json doc = read_json_file(path);
  const json& list = doc.is_object() ? field(doc, "centers", path.string()) : doc;
  if (!list.is_array()) fail(path.string(), "centers", "expected an array of site indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_number_unsigned() && !(list[i].is_number_integer() && list[i].get<long long>() >= 0)) {
      fail(path.string(), "centers[" + std::to_string(i) + "]", "expected a nonnegative integer");
    }
    out.push_back(list[i].get<std::size_t>());
  }
  return out;
}

}  // namespace lipjet
