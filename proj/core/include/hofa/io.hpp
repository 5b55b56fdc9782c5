#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "hofa/cube.hpp"
#include "hofa/decompose.hpp"
#include "hofa/group.hpp"
#include "hofa/moments.hpp"

namespace hofa {

using Json = nlohmann::json;

/// Significant digits of every floating value written by the toolkit.
inline constexpr int kOutputDigits = 12;

/// "%.12g" formatting, locale independent.
std::string format_number(double x);
/// x rounded to 12 significant digits, so JSON dumps stay short and stable.
double round_output(double x);

Json group_to_json(const FiniteAbelianGroup& group);
FiniteAbelianGroup group_from_json(const Json& j);

/// {"group":{...},"values":[[re,im],...]}; the bound is max |f|.
Json function_to_json(const GroupFunction& f);
GroupFunction function_from_json(const Json& j);

/// {"points":N,"cubes":{"1":[[...],...],...}}.
Json cubespace_to_json(const Cubespace& space);
Cubespace cubespace_from_json(const Json& j);

/// {"n":3,"terms":[{"subset":[1,2],"power":1,"conjugate":false},...]}.
Json moment_spec_to_json(const MomentSpec& spec);
MomentSpec moment_spec_from_json(const Json& j);
/// A single spec object or an array of them.
std::vector<MomentSpec> moment_specs_from_json(const Json& j);

/// {"characters":[freq tuples],"g_coeffs":[[re,im],...],"complexity":m,"balance":b}.
Json certificate_to_json(const NilspacePolynomialCertificate& cert);
NilspacePolynomialCertificate certificate_from_json(const Json& j, const FiniteAbelianGroup& group);

Json diagnostics_to_json(const DecompositionDiagnostics& d);

/// Throws InvalidArgument when the file is missing or not valid JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hofa
