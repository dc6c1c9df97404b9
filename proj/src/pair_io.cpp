#include "biortho/pair_io.hpp"

#include <fstream>
#include <sstream>

#include "biortho/errors.hpp"

namespace biortho {

namespace {

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& rows, Index d, Index n,
                               const char* name) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != d) {
    std::ostringstream msg;
    msg << "pair file: '" << name << "' must be an array of " << d << " rows";
    throw SchemaError(msg.str());
  }
  ComplexMatrix m(d, n);
  for (Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      std::ostringstream msg;
      msg << "pair file: '" << name << "' row " << i << " must hold " << n
          << " entries";
      throw SchemaError(msg.str());
    }
    for (Index j = 0; j < n; ++j) {
      const auto& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 ||
          !entry[0].is_number() || !entry[1].is_number()) {
        std::ostringstream msg;
        msg << "pair file: '" << name << "' entry (" << i << "," << j
            << ") must be a [re, im] number pair";
        throw SchemaError(msg.str());
      }
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

} // namespace

nlohmann::ordered_json pair_to_json(const TruncatedPair& pair) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kPairSchemaVersion;
  if (!pair.label().empty()) {
    doc["label"] = pair.label();
  }
  doc["dim"] = pair.dim();
  doc["count"] = pair.count();
  doc["phi"] = matrix_to_json(pair.phi());
  doc["psi"] = matrix_to_json(pair.psi());
  return doc;
}

TruncatedPair pair_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw SchemaError("pair file: top level must be an object");
  }
  if (!doc.contains("schema_version") ||
      !doc["schema_version"].is_number_integer()) {
    throw SchemaError("pair file: missing integer 'schema_version'");
  }
  if (doc["schema_version"].get<int>() != kPairSchemaVersion) {
    std::ostringstream msg;
    msg << "pair file: unsupported schema_version "
        << doc["schema_version"].get<int>() << " (expected "
        << kPairSchemaVersion << ")";
    throw SchemaError(msg.str());
  }
  for (const char* key : {"dim", "count"}) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
      std::ostringstream msg;
      msg << "pair file: missing integer '" << key << "'";
      throw SchemaError(msg.str());
    }
  }
  const Index d = doc["dim"].get<Index>();
  const Index n = doc["count"].get<Index>();
  if (d < 1 || n < 1) {
    throw SchemaError("pair file: 'dim' and 'count' must be positive");
  }
  if (!doc.contains("phi") || !doc.contains("psi")) {
    throw SchemaError("pair file: missing 'phi' or 'psi'");
  }
  std::string label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) {
      throw SchemaError("pair file: 'label' must be a string");
    }
    label = doc["label"].get<std::string>();
  }

  ComplexMatrix phi = matrix_from_json(doc["phi"], d, n, "phi");
  ComplexMatrix psi = matrix_from_json(doc["psi"], d, n, "psi");
  try {
    return TruncatedPair(std::move(phi), std::move(psi), std::move(label));
  } catch (const Error& e) {
    // Shape was already vetted against the header fields, so any constructor
    // complaint is about the values themselves.
    throw ValidationError(std::string("pair file: ") + e.what());
  }
}

void save_pair(const TruncatedPair& pair, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << pair_to_json(pair).dump(2) << '\n';
  if (!out.good()) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

TruncatedPair load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
  return pair_from_json(doc);
}

} // namespace biortho
