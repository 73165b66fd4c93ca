#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "tnz/laurent.hpp"
#include "tnz/triangulation.hpp"

namespace tnz {

using json = nlohmann::json;

Triangulation parse_triangulation(const std::string& text);
Triangulation load_triangulation(const std::string& path);
json triangulation_to_json(const Triangulation& t);

// Rounded to 15 significant digits so that output is stable across platforms.
double round15(double x);

json to_json(const ZPoly& p);
json to_json(const CPoly& p);
json to_json(const IntMatrix& m);
json to_json(const ZLMatrix& m);
json to_json(const std::vector<std::complex<double>>& v);
json complex_to_json(std::complex<double> c);

std::vector<long long> parse_int_list(const std::string& text);

}  // namespace tnz
