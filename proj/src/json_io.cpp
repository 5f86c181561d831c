#include "orbithull/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace orbithull::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, "malformed element JSON: " + what);
}

RealMatrix real_matrix(const Json& rows, int n, const char* key) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    schema_error(std::string("'") + key + "' must have " + std::to_string(n) + " rows");
  }
  RealMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      schema_error(std::string("row ") + std::to_string(r) + " of '" + key + "' must have " +
                   std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      const Json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) schema_error(std::string("'") + key + "' entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

void write_value(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        write_value(out, it.value(), indent + 2);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          write_value(out, j[i], indent + 2);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        write_value(out, j[i], indent + 2);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::vector<Matrix> blocks_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks")) schema_error("expected an object with 'blocks'");
  const Json& blocks = j["blocks"];
  if (!blocks.is_array() || blocks.empty()) schema_error("'blocks' must be a nonempty array");
  std::vector<Matrix> out;
  for (const Json& b : blocks) {
    if (!b.is_object() || !b.contains("re")) schema_error("each block needs 're'");
    int n = 0;
    if (b.contains("dim")) {
      if (!b["dim"].is_number_integer() || b["dim"].get<int>() < 1) {
        schema_error("'dim' must be a positive integer");
      }
      n = b["dim"].get<int>();
    } else {
      if (!b["re"].is_array()) schema_error("'re' must be an array");
      n = static_cast<int>(b["re"].size());
    }
    const RealMatrix re = real_matrix(b["re"], n, "re");
    RealMatrix im = RealMatrix::Zero(n, n);
    if (b.contains("im") && !b["im"].is_null()) im = real_matrix(b["im"], n, "im");
    Matrix m(n, n);
    m.real() = re;
    m.imag() = im;
    out.push_back(std::move(m));
  }
  return out;
}

Json blocks_to_json(const std::vector<Matrix>& blocks) {
  Json arr = Json::array();
  for (const Matrix& m : blocks) {
    Json re = Json::array();
    Json im = Json::array();
    bool complex = false;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json rr = Json::array();
      Json ri = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        rr.push_back(m(r, c).real());
        ri.push_back(m(r, c).imag());
        complex = complex || m(r, c).imag() != 0.0;
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ri));
    }
    Json b;
    b["dim"] = m.rows();
    b["re"] = std::move(re);
    if (complex) b["im"] = std::move(im);
    arr.push_back(std::move(b));
  }
  Json out;
  out["blocks"] = std::move(arr);
  return out;
}

HermitianElement element_from_json(const Json& j, const std::string& role) {
  if (j.is_object() && !j.contains("blocks") && j.contains("result") && j["result"].is_object() &&
      j["result"].contains(role)) {
    return element_from_json(j["result"][role], role);
  }
  auto blocks = blocks_from_json(j);
  std::vector<int> dims;
  for (const auto& b : blocks) dims.push_back(static_cast<int>(b.rows()));
  return HermitianElement::embed(Algebra::build(dims), std::move(blocks));
}

Json element_to_json(const HermitianElement& x) { return blocks_to_json(x.blocks()); }

Json combination_to_json(const ConvexCombination& cc) {
  Json out;
  out["weights"] = cc.weights;
  Json us = Json::array();
  for (const auto& u : cc.unitaries) us.push_back(blocks_to_json(u));
  out["unitaries"] = std::move(us);
  out["target_error"] = cc.target_error;
  out["block_terms"] = cc.block_terms;
  return out;
}

ConvexCombination combination_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("weights") || !j.contains("unitaries")) {
    throw Error(ErrorCode::InvalidArgument, "combination needs 'weights' and 'unitaries'");
  }
  ConvexCombination cc;
  cc.weights = j["weights"].get<std::vector<double>>();
  for (const Json& u : j["unitaries"]) cc.unitaries.push_back(blocks_from_json(u));
  if (j.contains("target_error")) cc.target_error = j["target_error"].get<double>();
  if (j.contains("block_terms")) cc.block_terms = j["block_terms"].get<std::vector<int>>();
  return cc;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse '" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += "\n";
  return out;
}

}  // namespace orbithull::io
