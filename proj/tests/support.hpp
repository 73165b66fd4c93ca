#pragma once

#include <cctype>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tnz/io.hpp"
#include "tnz/laurent.hpp"
#include "tnz/triangulation.hpp"

namespace tnz::testing {

inline Triangulation fixture(const std::string& name) {
  return load_triangulation(std::string(TNZ_FIXTURE_DIR) + "/" + name + ".json");
}

// Parses strings such as "-t^2 + 2t - 1 + 3t^-2" into an exact Laurent polynomial.
inline ZPoly zp(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  ZPoly out;
  std::size_t i = 0;
  auto read_int = [&](long long& v) {
    const std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    v = std::stoll(s.substr(start, i - start));
  };
  while (i < s.size()) {
    long long sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    long long c = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) read_int(c);
    int e = 0;
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        long long ee = 0;
        read_int(ee);
        e = static_cast<int>(ee);
      }
    }
    out.add(e, BigInt(sign * c));
  }
  return out;
}

inline ZLMatrix zmat(const std::vector<std::vector<std::string>>& rows) {
  ZLMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = zp(rows[i][j]);
  return m;
}

// Reference data for the two knots.
struct KnotData {
  IntMatrix G, Gp, Gpp, A, B, ABt;
  ZLMatrix Gt, Gpt, Gppt, At, Bt, product;
};

inline KnotData knot_4_1() {
  KnotData k;
  k.G = {{2, 2}, {0, 0}};
  k.Gp = {{1, 1}, {1, 1}};
  k.Gpp = {{0, 0}, {2, 2}};
  k.A = {{1, 1}, {-1, -1}};
  k.B = {{-1, -1}, {1, 1}};
  k.ABt = {{-2, 2}, {2, -2}};
  k.Gt = zmat({{"2t", "2t"}, {"0", "0"}});
  k.Gpt = zmat({{"t^2", "1"}, {"t", "t^2"}});
  k.Gppt = zmat({{"0", "0"}, {"2t^2", "2t"}});
  k.At = zmat({{"-t^2+2t", "2t-1"}, {"-t", "-t^2"}});
  k.Bt = zmat({{"-t^2", "-1"}, {"2t^2-t", "-t^2+2t"}});
  k.product = zmat({{"-2t+2-2t^-1", "t+t^-2"}, {"t^2+t^-1", "-2t+2-2t^-1"}});
  return k;
}

inline KnotData knot_6_3() {
  KnotData k;
  k.G = {{1, 1, 1, 1, 0, 1}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
         {0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 1, 0}, {1, 1, 0, 1, 1, 1}};
  k.Gp = {{0, 0, 0, 0, 0, 0}, {1, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 1, 0},
          {0, 0, 1, 1, 1, 0}, {1, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0}};
  k.Gpp = {{0, 0, 0, 0, 0, 0}, {0, 2, 0, 2, 0, 0}, {1, 0, 0, 0, 0, 1},
           {1, 0, 0, 0, 0, 1}, {0, 0, 2, 0, 2, 0}, {0, 0, 0, 0, 0, 0}};
  k.A = {{1, 1, 1, 1, 0, 1},   {-1, -1, 0, -1, 0, -1}, {0, -1, -1, 0, -1, 0},
         {0, 0, -1, -1, -1, 0}, {-1, 0, 1, 0, 1, -1},  {1, 1, 0, 1, 1, 1}};
  k.B = {{0, 0, 0, 0, 0, 0},     {-1, 1, 0, 1, 0, -1}, {1, -1, -1, 0, -1, 1},
         {1, 0, -1, -1, -1, 1},  {-1, 0, 2, 0, 2, -1}, {0, 0, 0, 0, 0, 0}};
  k.ABt = {{0, 0, 0, 0, 0, 0},   {0, 0, -1, -1, 2, 0},  {0, -1, 3, 2, -4, 0},
           {0, -1, 2, 3, -4, 0}, {0, 2, -4, -4, 6, 0},  {0, 0, 0, 0, 0, 0}};
  k.Gt = zmat({{"t", "t^2", "t", "1", "0", "t"},
               {"0", "0", "0", "0", "0", "0"},
               {"0", "0", "0", "0", "0", "0"},
               {"0", "0", "0", "0", "0", "0"},
               {"0", "0", "t", "0", "t", "0"},
               {"t^2", "t^2", "0", "t^2", "t^2", "t^2"}});
  k.Gpt = zmat({{"0", "0", "0", "0", "0", "0"},
                {"1", "t^2", "0", "t", "0", "t^3"},
                {"0", "t", "t", "0", "1", "0"},
                {"0", "0", "t^2", "t^2", "t^3", "0"},
                {"t^2", "0", "0", "0", "0", "1"},
                {"0", "0", "0", "0", "0", "0"}});
  k.Gppt = zmat({{"0", "0", "0", "0", "0", "0"},
                 {"0", "t+t^3", "0", "1+t^2", "0", "0"},
                 {"1", "0", "0", "0", "0", "t"},
                 {"t^2", "0", "0", "0", "0", "t^3"},
                 {"0", "0", "1+t^2", "0", "1+t^2", "0"},
                 {"0", "0", "0", "0", "0", "0"}});
  // As printed, except (2,4) which the printed G(t) - G'(t) forces to be -t.
  k.At = zmat({{"t", "t^2", "t", "1", "0", "t"},
               {"-1", "-t^2", "0", "-t", "0", "-t^3"},
               {"0", "-t", "-t", "0", "-1", "0"},
               {"0", "0", "-t^2", "-t^2", "-t^3", "0"},
               {"-t^2", "0", "t", "0", "t", "-1"},
               {"t^2", "t^2", "0", "t^2", "t^2", "t^2"}});
  k.Bt = zmat({{"0", "0", "0", "0", "0", "0"},
               {"-1", "t-t^2+t^3", "0", "1-t+t^2", "0", "-t^3"},
               {"1", "-t", "-t", "0", "-1", "t"},
               {"t^2", "0", "-t^2", "-t^2", "-t^3", "t^3"},
               {"-t^2", "0", "1+t^2", "0", "1+t^2", "-1"},
               {"0", "0", "0", "0", "0", "0"}});
  // As printed, except (4,5) whose t^-1 term is t in the transposed partner entry.
  k.product = zmat({{"0", "0", "0", "0", "0", "0"},
                    {"0", "-2t+4-2t^-1", "-t^2+t-1", "-1+t^-1-t^-2", "t^3+t^-2", "0"},
                    {"0", "-1+t^-1-t^-2", "3", "t^-1+t^-3", "-t-1-t^-1-t^-2", "0"},
                    {"0", "-t^2+t-1", "t^3+t", "3", "-t^3-t^2-t-1", "0"},
                    {"0", "t^2+t^-3", "-t^2-t-1-t^-1", "-1-t^-1-t^-2-t^-3", "2t+2+2t^-1", "0"},
                    {"0", "0", "0", "0", "0", "0"}});
  return k;
}

// Per-row shifts s with mine(i, j) = ref(i, j) * t^{s_i} for all listed pairs.
// Rows that vanish in every matrix get shift 0.
inline std::optional<std::vector<int>> row_alignment(const std::vector<const ZLMatrix*>& mine,
                                                     const std::vector<const ZLMatrix*>& ref) {
  const std::size_t rows = mine.front()->rows();
  std::vector<int> shift(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::optional<int> s;
    for (std::size_t m = 0; m < mine.size() && !s; ++m)
      for (std::size_t j = 0; j < mine[m]->cols() && !s; ++j) {
        const ZPoly& a = (*mine[m])(i, j);
        const ZPoly& b = (*ref[m])(i, j);
        if (!a.is_zero() && !b.is_zero()) s = a.min_exp() - b.min_exp();
      }
    shift[i] = s.value_or(0);
    for (std::size_t m = 0; m < mine.size(); ++m)
      for (std::size_t j = 0; j < mine[m]->cols(); ++j)
        if (!((*mine[m])(i, j) == (*ref[m])(i, j).shifted(shift[i]))) return std::nullopt;
  }
  return shift;
}

inline ZLMatrix random_laurent_matrix(std::mt19937& rng, std::size_t n, int max_terms, int exp_range, int coeff_range) {
  std::uniform_int_distribution<int> terms(0, max_terms), ex(-exp_range, exp_range), co(-coeff_range, coeff_range);
  ZLMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int k = terms(rng);
      for (int r = 0; r < k; ++r) m(i, j).add(ex(rng), BigInt(co(rng)));
    }
  return m;
}

}  // namespace tnz::testing
