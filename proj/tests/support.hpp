#pragma once

// Shared helpers for the test executables: data-file access, a seeded
// random source, and a hand-written model of the mitotic oscillator used
// as an oracle independent of the SBML pipeline.

#include <array>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(PATHWEAVE_TEST_DATA) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_data(const std::string& name) { return read_file(data_path(name)); }

inline const std::string kAppendixSbml = "BIOMD0000000003.sbml.xml";
inline const std::string kAppendixBiopax = "BIOMD0000000003.biopax.owl";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Mean inter-peak interval of C over [0, 200] from the scipy oracle in
// tests/oracles/goldbeter_period.py.
inline constexpr double kOraclePeriod = 25.173654060;

// Rate equations of the oscillator written out directly (cell = 1).
struct Goldbeter {
  double vi = 0.025, kd = 0.01, vd = 0.25, Kd = 0.02;
  double K1 = 0.005, K2 = 0.005, K3 = 0.005, K4 = 0.005;
  double V2 = 1.5, V4 = 0.5, VM1 = 3.0, VM3 = 1.0, Kc = 0.5;

  std::array<double, 3> rhs(const std::array<double, 3>& y) const {
    const double C = y[0], M = y[1], X = y[2];
    const double V1 = C * VM1 / (C + Kc);
    const double V3 = M * VM3;
    return {vi - kd * C - vd * X * C / (C + Kd),
            V1 * (1 - M) / (K1 + 1 - M) - V2 * M / (K2 + M),
            V3 * (1 - X) / (K3 + 1 - X) - V4 * X / (K4 + X)};
  }

  // Classic RK4 with n equal steps of size t_end / n.
  std::array<double, 3> rk4(std::array<double, 3> y, double t_end, long n) const {
    const double h = t_end / static_cast<double>(n);
    auto axpy = [](const std::array<double, 3>& a, double s, const std::array<double, 3>& b) {
      return std::array<double, 3>{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]};
    };
    for (long i = 0; i < n; ++i) {
      const auto k1 = rhs(y);
      const auto k2 = rhs(axpy(y, h / 2, k1));
      const auto k3 = rhs(axpy(y, h / 2, k2));
      const auto k4 = rhs(axpy(y, h, k3));
      for (int j = 0; j < 3; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    return y;
  }
};

}  // namespace testing
