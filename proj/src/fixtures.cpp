#include "qwalk/fixtures.hpp"

#include <cmath>
#include <regex>
#include <sstream>

namespace qwalk::fixtures {

namespace {

CMatrix grover_coin(int n) {
  return (2.0 / n) * CMatrix::Ones(n, n) - CMatrix::Identity(n, n);
}

std::vector<double> parse_args(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ValidationError("bad fixture argument '" + item + "'");
    }
  }
  return out;
}

}  // namespace

WalkSpec shift_coin(const std::vector<int>& shifts, const CMatrix& coin) {
  const int n = static_cast<int>(shifts.size());
  if (coin.rows() != n || coin.cols() != n) throw ValidationError("coin size mismatch");
  std::map<int, CMatrix> terms;
  for (int row = 0; row < n; ++row) {
    auto [it, inserted] = terms.try_emplace(shifts[row], CMatrix::Zero(n, n));
    (void)inserted;
    it->second.row(row) = coin.row(row);
  }
  return WalkSpec::create(n, std::move(terms));
}

WalkSpec free_walk() { return WalkSpec::create(1, {{1, CMatrix::Ones(1, 1)}}); }

WalkSpec constant_walk(Complex alpha, int n) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) throw ValidationError("constant must be unimodular");
  CMatrix a = alpha * CMatrix::Identity(n, n);
  return WalkSpec::create(n, {{0, a}});
}

WalkSpec identity(int n) { return constant_walk(1.0, n); }

WalkSpec grover4() { return shift_coin({-3, -1, 1, 3}, grover_coin(4)); }

WalkSpec grover3() { return shift_coin({-1, 0, 1}, grover_coin(3)); }

WalkSpec grover4_subwalk() {
  // W = (1/2) [[-S^3 - S, S - S^-1], [S - S^-1, -S^-1 - S^-3]]
  std::map<int, CMatrix> terms;
  CMatrix a(2, 2);
  a << -1, 0, 0, 0;
  terms.emplace(3, 0.5 * a);
  a << -1, 1, 1, 0;
  terms.emplace(1, 0.5 * a);
  a << 0, -1, -1, -1;
  terms.emplace(-1, 0.5 * a);
  a << 0, 0, 0, -1;
  terms.emplace(-3, 0.5 * a);
  return WalkSpec::create(2, std::move(terms));
}

WalkSpec grover3_subwalk() {
  // W = (1/3) [[-2 - S, sqrt2 i (S^-1 - 1)], [sqrt2 i (S - 1), -2 - S^-1]]
  const Complex s2i(0.0, std::sqrt(2.0));
  std::map<int, CMatrix> terms;
  CMatrix a(2, 2);
  a << 0.0, s2i, 0.0, -1.0;
  terms.emplace(-1, a / 3.0);
  a << -2.0, -s2i, -s2i, -2.0;
  terms.emplace(0, a / 3.0);
  a << -1.0, 0.0, s2i, 0.0;
  terms.emplace(1, a / 3.0);
  return WalkSpec::create(2, std::move(terms));
}

WalkSpec cube_root() {
  CMatrix shifted = CMatrix::Zero(3, 3);
  shifted(0, 1) = 1.0;
  shifted(1, 2) = 1.0;
  CMatrix fixed = CMatrix::Zero(3, 3);
  fixed(2, 0) = 1.0;
  return WalkSpec::create(3, {{1, shifted}, {0, fixed}});
}

WalkSpec two_by_two(const CMatrix& coin) { return shift_coin({-1, 1}, coin); }

WalkSpec coined(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("coined walk needs 0 <= r <= 1");
  const double s = std::sqrt(1.0 - r * r);
  CMatrix coin(2, 2);
  coin << r, -s, s, r;
  return two_by_two(coin);
}

WalkSpec det_winding_walk(double r, Complex b) {
  CMatrix shifted = CMatrix::Zero(2, 2);
  shifted(0, 0) = r;
  shifted(0, 1) = -b;
  CMatrix fixed = CMatrix::Zero(2, 2);
  fixed(1, 0) = std::conj(b);
  fixed(1, 1) = r;
  return WalkSpec::create(2, {{1, shifted}, {0, fixed}});
}

WalkSpec by_name(const std::string& name) {
  static const std::regex pattern(R"(^\s*([a-z0-9_]+)\s*(?:\((.*)\))?\s*$)");
  std::smatch match;
  if (!std::regex_match(name, match, pattern)) throw ValidationError("bad fixture name '" + name + "'");
  const std::string base = match[1];
  const std::vector<double> args = match[2].matched ? parse_args(match[2]) : std::vector<double>{};
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw ValidationError("fixture '" + base + "' takes " + std::to_string(count) + " argument(s)");
    }
  };

  if (base == "free") return need(0), free_walk();
  if (base == "grover4") return need(0), grover4();
  if (base == "grover3") return need(0), grover3();
  if (base == "grover4_subwalk") return need(0), grover4_subwalk();
  if (base == "grover3_subwalk") return need(0), grover3_subwalk();
  if (base == "cube_root") return need(0), cube_root();
  if (base == "coined") return need(1), coined(args[0]);
  if (base == "identity") return need(1), identity(static_cast<int>(args[0]));
  if (base == "det_winding") {
    if (args.size() == 2) return det_winding_walk(args[0], args[1]);
    need(3);
    return det_winding_walk(args[0], Complex(args[1], args[2]));
  }
  if (base == "constant") {
    // constant(re) for a real unimodular value, or constant(re, im)
    if (args.size() == 1) return constant_walk(args[0]);
    need(2);
    return constant_walk(Complex(args[0], args[1]));
  }
  throw ValidationError("unknown fixture '" + base + "'");
}

std::vector<std::string> names() {
  return {"free",        "grover4",     "grover3",        "grover4_subwalk", "grover3_subwalk",
          "cube_root",   "coined(r)",   "det_winding(r,b)", "constant(re,im)", "identity(n)"};
}

}  // namespace qwalk::fixtures
