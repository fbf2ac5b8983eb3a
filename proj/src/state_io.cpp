#include "qsep/state_io.hpp"

#include <fstream>
#include <sstream>

#include "qsep/error.hpp"
#include "qsep/format.hpp"

namespace qsep {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorKind::Schema, msg); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Complex read_pair(const json& entry, std::size_t index) {
  if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
    std::ostringstream os;
    os << "field 'data[" << index << "]': expected a [re, im] pair of numbers";
    schema_error(os.str());
  }
  return {entry[0].get<double>(), entry[1].get<double>()};
}

}  // namespace

QuantumState state_from_json(std::string_view text, int max_qubits) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed JSON";
    schema_error(os.str());
  }
  if (!doc.is_object()) schema_error("top level: expected an object");

  if (!doc.contains("n_qubits")) schema_error("field 'n_qubits': missing");
  if (!doc["n_qubits"].is_number_integer()) schema_error("field 'n_qubits': expected an integer");
  const auto n = doc["n_qubits"].get<long long>();
  if (n < 1) schema_error("field 'n_qubits': must be >= 1");
  if (n > max_qubits) {
    std::ostringstream os;
    os << "field 'n_qubits': " << n << " exceeds the cap of " << max_qubits;
    throw Error(ErrorKind::CapExceeded, os.str());
  }

  if (!doc.contains("kind")) schema_error("field 'kind': missing");
  if (!doc["kind"].is_string()) schema_error("field 'kind': expected \"pure\" or \"mixed\"");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind != "pure" && kind != "mixed") schema_error("field 'kind': expected \"pure\" or \"mixed\"");

  if (!doc.contains("data")) schema_error("field 'data': missing");
  const json& data = doc["data"];
  if (!data.is_array()) schema_error("field 'data': expected an array of [re, im] pairs");

  const std::size_t d = dim_of(static_cast<int>(n));
  const std::size_t expected = kind == "pure" ? d : d * d;
  if (data.size() != expected) {
    std::ostringstream os;
    os << "field 'data': expected " << expected << " pairs for " << kind << " n_qubits=" << n
       << ", got " << data.size();
    schema_error(os.str());
  }

  try {
    if (kind == "pure") {
      ComplexVector v(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = read_pair(data[i], i);
      return QuantumState::pure(std::move(v), max_qubits);
    }
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = read_pair(data[r * d + c], r * d + c);
    return QuantumState::mixed(std::move(m), max_qubits);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    throw Error(e.kind(), std::string("field 'data': ") + e.what());
  }
}

QuantumState read_state_file(const std::filesystem::path& path, int max_qubits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) schema_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str(), max_qubits);
}

json state_to_json(const QuantumState& state) {
  json doc;
  doc["n_qubits"] = state.n_qubits();
  doc["kind"] = state.is_pure() ? "pure" : "mixed";
  json data = json::array();
  auto push = [&data](Complex z) { data.push_back(json::array({round12(z.real()), round12(z.imag())})); };
  if (state.is_pure()) {
    for (const Complex& z : state.amplitudes()) push(z);
  } else {
    const ComplexMatrix& m = state.density();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) push(m(r, c));
  }
  doc["data"] = std::move(data);
  return doc;
}

void write_state_file(const std::filesystem::path& path, const QuantumState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Schema, "cannot write " + path.string());
  out << state_to_json(state).dump() << '\n';
}

}  // namespace qsep
