#pragma once

// JSON encodings of the library's data types. Complex entries are [re, im]
// pairs (a bare number is read as a real entry); matrices are row-major
// nested arrays.

#include <string>

#include <nlohmann/json.hpp>

#include "nev/canonical.hpp"
#include "nev/herglotz.hpp"
#include "nev/jacobi.hpp"
#include "nev/kac.hpp"
#include "nev/realize.hpp"
#include "nev/types.hpp"

namespace nev {

/// Malformed or structurally wrong JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json to_json(const RealizedFunction& f);
/// With `checked = false` the class invariants are not enforced (shapes
/// still are); callers inspect violations() themselves.
RealizedFunction realized_from_json(const Json& j, bool checked = true);

/// {"d", "a", "b"}; scalar entries are written as plain numbers when d = 1.
Json to_json(const BlockJacobi& j);
BlockJacobi jacobi_from_json(const Json& j);

Json to_json(const StepHamiltonian& h);
StepHamiltonian hamiltonian_from_json(const Json& j);

Json to_json(const WeylDiskEstimate& e);

Json to_json(const SubspaceRealization& r);
SubspaceRealization subspace_from_json(const Json& j);

/// Reads and parses a file; ParseError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace nev
