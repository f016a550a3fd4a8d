#include "infoprice/problem_file.hpp"

#include "infoprice/errors.hpp"

#include "json.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace infoprice {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fieldError(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + path + "': " + what);
}

double number(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
      fieldError(path, "'" + s + "' is not a decimal number");
    }
    return v;
  }
  fieldError(path, "expected a number or decimal string");
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fieldError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fieldError(path + "." + key, "missing");
  return *it;
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) fieldError(path, "expected an array");
  return j;
}

VectorXd vector(const json& j, const std::string& path, Eigen::Index expected = -1) {
  array(j, path);
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "[" + std::to_string(i) + "]");
  }
  if (expected >= 0 && v.size() != expected) {
    fieldError(path, "expected length " + std::to_string(expected) + ", got " +
                         std::to_string(v.size()));
  }
  return v;
}

MatrixXd matrix(const json& j, const std::string& path, Eigen::Index cols) {
  array(j, path);
  MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) =
        vector(j[i], path + "[" + std::to_string(i) + "]", cols).transpose();
  }
  return m;
}

json toJson(double v) { return exactDecimal(v); }

json toJson(const VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(toJson(v(i)));
  return out;
}

json toJson(const MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(toJson(VectorXd(m.row(i).transpose())));
  return out;
}

}  // namespace

std::string exactDecimal(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[40];
  // Shortest of %.15g/%.16g/%.17g that parses back to the same bits.
  for (int prec : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

PolyFun buildIntegrand(const IntegrandSpec& spec, int dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  PolyFun f = spec.pieces.empty() ? constant(n, 0.0) : maxAffine(spec.pieces);
  if (f.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "integrand pieces have dimension " +
                                                  std::to_string(f.dim()) + ", expected " +
                                                  std::to_string(dim));
  }
  if (spec.g.size() > 0 || spec.a.size() > 0) {
    const MatrixXd G = spec.g.size() > 0 ? spec.G : MatrixXd(0, n);
    const MatrixXd A = spec.a.size() > 0 ? spec.A : MatrixXd(0, n);
    f = sum(f, indicator(G, spec.g, A, spec.a));
  }
  return f;
}

StochasticProgram toProgram(const ProblemFile& file) {
  FilteredSpace space = [&] {
    try {
      return FilteredSpace::build(file.scenarios, file.partitions);
    } catch (const Error& e) {
      const bool probs = e.kind() == ErrorKind::BadProbabilities;
      throw ValidationError(e.kind(), probs ? "scenarios" : "partitions",
                            std::string(to_string(e.kind())) + ": " + e.what());
    }
  }();
  if (file.dims.size() != space.numStages()) {
    throw ValidationError(ErrorKind::DimensionMismatch, "dims",
                          "DimensionMismatch: " + std::to_string(file.dims.size()) +
                              " stage dimensions for " + std::to_string(space.numStages()) +
                              " stages");
  }
  if (file.integrands.size() != file.scenarios.size()) {
    throw ValidationError(ErrorKind::DimensionMismatch, "integrands",
                          "DimensionMismatch: one integrand per scenario required");
  }
  int n = 0;
  for (int d : file.dims) n += d;
  std::vector<PolyFun> h;
  for (std::size_t w = 0; w < file.integrands.size(); ++w) {
    try {
      h.push_back(buildIntegrand(file.integrands[w], n));
    } catch (const Error& e) {
      throw ValidationError(e.kind(), "integrands." + file.scenarios[w].id,
                            std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  return StochasticProgram(std::move(space), file.dims, std::move(h));
}

ProblemFile parseProblem(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " +
                                           e.what());
  }
  ProblemFile file;
  const auto& dims = array(member(root, "dims", "$"), "dims");
  int n = 0;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    const std::string path = "dims[" + std::to_string(t) + "]";
    if (!dims[t].is_number_integer() || dims[t].get<int>() < 0) {
      fieldError(path, "expected a non-negative integer");
    }
    file.dims.push_back(dims[t].get<int>());
    n += file.dims.back();
  }
  if (root.contains("stages")) {
    const auto& st = root["stages"];
    if (!st.is_number_integer() || st.get<std::size_t>() != file.dims.size()) {
      fieldError("stages", "must equal the length of dims");
    }
  }

  const auto& scen = array(member(root, "scenarios", "$"), "scenarios");
  for (std::size_t i = 0; i < scen.size(); ++i) {
    const std::string path = "scenarios[" + std::to_string(i) + "]";
    const auto& id = member(scen[i], "id", path);
    if (!id.is_string()) fieldError(path + ".id", "expected a string");
    file.scenarios.push_back({id.get<std::string>(), number(member(scen[i], "prob", path), path + ".prob")});
  }

  const auto& parts = array(member(root, "partitions", "$"), "partitions");
  for (std::size_t t = 0; t < parts.size(); ++t) {
    const std::string tp = "partitions[" + std::to_string(t) + "]";
    std::vector<std::vector<std::string>> atoms;
    for (std::size_t k = 0; k < array(parts[t], tp).size(); ++k) {
      const std::string kp = tp + "[" + std::to_string(k) + "]";
      std::vector<std::string> atom;
      for (const auto& id : array(parts[t][k], kp)) {
        if (!id.is_string()) fieldError(kp, "scenario ids must be strings");
        atom.push_back(id.get<std::string>());
      }
      atoms.push_back(std::move(atom));
    }
    file.partitions.push_back(std::move(atoms));
  }

  const auto& integ = member(root, "integrands", "$");
  if (!integ.is_object()) fieldError("integrands", "expected an object keyed by scenario id");
  for (const auto& s : file.scenarios) {
    const std::string path = "integrands." + s.id;
    const auto& spec = member(integ, s.id.c_str(), "integrands");
    IntegrandSpec is;
    if (spec.contains("pieces")) {
      const auto& pieces = array(spec["pieces"], path + ".pieces");
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const std::string pp = path + ".pieces[" + std::to_string(i) + "]";
        AffinePiece piece;
        piece.slope = vector(member(pieces[i], "slope", pp), pp + ".slope", n);
        piece.intercept =
            pieces[i].contains("intercept") ? number(pieces[i]["intercept"], pp + ".intercept") : 0.0;
        is.pieces.push_back(std::move(piece));
      }
    }
    if (spec.contains("ineq")) {
      const auto& blk = spec["ineq"];
      is.G = matrix(member(blk, "G", path + ".ineq"), path + ".ineq.G", n);
      is.g = vector(member(blk, "g", path + ".ineq"), path + ".ineq.g", is.G.rows());
    } else {
      is.G.resize(0, n);
      is.g.resize(0);
    }
    if (spec.contains("eq")) {
      const auto& blk = spec["eq"];
      is.A = matrix(member(blk, "A", path + ".eq"), path + ".eq.A", n);
      is.a = vector(member(blk, "a", path + ".eq"), path + ".eq.a", is.A.rows());
    } else {
      is.A.resize(0, n);
      is.a.resize(0);
    }
    file.integrands.push_back(std::move(is));
  }
  std::set<std::string> known;
  for (const auto& s : file.scenarios) known.insert(s.id);
  for (const auto& [key, _] : integ.items()) {
    if (!known.count(key)) fieldError("integrands." + key, "no such scenario");
  }
  return file;
}

ProblemFile loadProblem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseProblem(ss.str());
}

std::string emitProblem(const ProblemFile& file) {
  json root;
  root["format"] = "infoprice-problem/1";
  root["stages"] = file.dims.size();
  root["dims"] = file.dims;
  json scen = json::array();
  for (const auto& s : file.scenarios) scen.push_back({{"id", s.id}, {"prob", exactDecimal(s.probability)}});
  root["scenarios"] = scen;
  root["partitions"] = file.partitions;
  json integ = json::object();
  for (std::size_t w = 0; w < file.integrands.size(); ++w) {
    const auto& is = file.integrands[w];
    json spec = json::object();
    json pieces = json::array();
    for (const auto& p : is.pieces) {
      pieces.push_back({{"slope", toJson(p.slope)}, {"intercept", toJson(p.intercept)}});
    }
    spec["pieces"] = pieces;
    if (is.g.size() > 0) spec["ineq"] = {{"G", toJson(is.G)}, {"g", toJson(is.g)}};
    if (is.a.size() > 0) spec["eq"] = {{"A", toJson(is.A)}, {"a", toJson(is.a)}};
    integ[file.scenarios[w].id] = spec;
  }
  root["integrands"] = integ;
  return root.dump(2) + "\n";
}

StochasticProgram parse(const std::filesystem::path& path) { return toProgram(loadProblem(path)); }

}  // namespace infoprice
