// Copyright 2026 The graphcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graphcode/noise.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace graphcode {

namespace {

bool has_label(const DensityOperator& rho, Label q) {
  return std::find(rho.labels().begin(), rho.labels().end(), q) != rho.labels().end();
}

Matrix pauli_twirl(const Matrix& rho, const std::vector<Label>& labels, Label q, const std::array<double, 4>& w) {
  const std::vector<Label> target{q};
  Matrix out = w[0] * rho;
  const std::array<Matrix, 3> p{gates::pauli_x(), gates::pauli_y(), gates::pauli_z()};
  for (std::size_t k = 0; k < 3; ++k) {
    if (w[k + 1] == 0.0) continue;
    const Matrix full = embed(p[k], target, labels);
    out += w[k + 1] * full * rho * full.adjoint();
  }
  return out;
}

void check_probability(const std::string& what, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + " must lie in [0, 1], got " + std::to_string(p));
}

/// Unitary taking the measurement basis to Z.
Matrix basis_rotation(char b) {
  switch (b) {
    case 'Z':
      return gates::identity();
    case 'X':
      return gates::hadamard();
    case 'Y':
      return gates::hadamard() * gates::phase_s().adjoint();
    default:
      throw std::invalid_argument(std::string("measurement basis must be X, Y or Z, got '") + b + "'");
  }
}

std::string bits_of(std::size_t index, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t k = 0; k < n; ++k) {
    if ((index >> (n - 1 - k)) & 1u) s[k] = '1';
  }
  return s;
}

std::uint64_t draw_poisson(double mean, std::mt19937_64& rng) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> d(mean);
  return d(rng);
}

CountRecord parse_setting_label(const std::string& label) {
  CountRecord r;
  std::size_t i = 0;
  while (i < label.size()) {
    const char b = static_cast<char>(std::toupper(static_cast<unsigned char>(label[i])));
    if (b != 'X' && b != 'Y' && b != 'Z') throw std::invalid_argument("bad setting label '" + label + "'");
    std::size_t j = i + 1;
    while (j < label.size() && std::isdigit(static_cast<unsigned char>(label[j]))) ++j;
    if (j == i + 1) throw std::invalid_argument("setting label '" + label + "' lacks a qubit number");
    r.setting += b;
    r.qubits.push_back(std::stoi(label.substr(i + 1, j - i - 1)));
    i = j;
  }
  if (r.qubits.empty()) throw std::invalid_argument("empty setting label");
  return r;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

std::string point_name(ApplicationPoint p) {
  return p == ApplicationPoint::post_resource ? "post-resource" : "post-encoding";
}

ApplicationPoint parse_point(std::string_view name) {
  if (name == "post-resource") return ApplicationPoint::post_resource;
  if (name == "post-encoding") return ApplicationPoint::post_encoding;
  throw std::invalid_argument("application point must be post-resource or post-encoding");
}

NoiseModel NoiseModel::white(double v, ApplicationPoint point) {
  NoiseModel m;
  m.visibility = v;
  m.point = point;
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  check_probability("visibility", visibility);
  for (const auto& [q, p] : depolarizing) check_probability("depolarizing[" + std::to_string(q) + "]", p);
  for (const auto& [q, p] : dephasing) check_probability("dephasing[" + std::to_string(q) + "]", p);
}

bool NoiseModel::is_ideal() const {
  auto zero = [](const auto& m) { return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second == 0.0; }); };
  return visibility == 1.0 && zero(depolarizing) && zero(dephasing);
}

DensityOperator apply_noise(const DensityOperator& rho, const NoiseModel& model) {
  model.validate();
  if (model.is_ideal()) return rho;
  Matrix m = rho.matrix();
  for (const auto& [q, p] : model.depolarizing) {
    if (p > 0.0 && has_label(rho, q)) m = pauli_twirl(m, rho.labels(), q, {1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0, p / 4.0});
  }
  for (const auto& [q, p] : model.dephasing) {
    if (p > 0.0 && has_label(rho, q)) m = pauli_twirl(m, rho.labels(), q, {1.0 - p, 0.0, 0.0, p});
  }
  const Eigen::Index dim = m.rows();
  m = model.visibility * m + (1.0 - model.visibility) * Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityOperator(rho.labels(), m);
}

std::mt19937_64 make_rng(RngSeed s) {
  std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                    static_cast<std::uint32_t>(s.stream), static_cast<std::uint32_t>(s.stream >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t CountRecord::total() const {
  return std::accumulate(histogram.begin(), histogram.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

std::string CountRecord::setting_label() const {
  std::string out;
  for (std::size_t k = 0; k < qubits.size(); ++k) out += setting.at(k) + std::to_string(qubits[k]);
  return out;
}

CountRecord sample_setting_counts(const DensityOperator& rho, const std::vector<Label>& qubits, std::string_view setting,
                                  double expected_total, RngSeed seed) {
  if (!(expected_total > 0.0)) throw std::invalid_argument("expected count must be positive");
  if (setting.size() != qubits.size()) throw std::invalid_argument("setting needs one basis letter per qubit");
  DensityOperator reduced = partial_trace(rho, qubits);
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const std::vector<Label> target{qubits[k]};
    reduced = apply_unitary(reduced, basis_rotation(setting[k]), target);
  }
  const std::size_t n = qubits.size();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> probs(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    probs[i] = std::max(0.0, reduced.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  }
  const double norm = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= norm;

  auto rng = make_rng(seed);
  CountRecord r{qubits, std::string(setting), {}, expected_total};
  std::uint64_t remaining = draw_poisson(expected_total, rng);
  double remaining_p = 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t c = remaining;
    if (i + 1 < dim) {
      const double q = remaining_p > 0.0 ? std::clamp(probs[i] / remaining_p, 0.0, 1.0) : 0.0;
      c = remaining > 0 ? std::binomial_distribution<std::uint64_t>(remaining, q)(rng) : 0;
    }
    r.histogram[bits_of(i, n)] = c;
    remaining -= c;
    remaining_p -= probs[i];
  }
  return r;
}

double estimate_expectation(const CountRecord& counts, const std::set<Label>& mask) {
  std::vector<std::size_t> positions;
  for (Label q : mask) {
    const auto it = std::find(counts.qubits.begin(), counts.qubits.end(), q);
    if (it == counts.qubits.end()) throw std::invalid_argument("qubit " + std::to_string(q) + " is not in the count record");
    positions.push_back(static_cast<std::size_t>(it - counts.qubits.begin()));
  }
  double sum = 0.0;
  std::uint64_t total = 0;
  for (const auto& [bits, c] : counts.histogram) {
    int parity = 0;
    for (std::size_t p : positions) parity ^= bits.at(p) == '1';
    sum += (parity ? -1.0 : 1.0) * static_cast<double>(c);
    total += c;
  }
  if (total == 0) throw std::invalid_argument("empty histogram for setting " + counts.setting_label());
  return sum / static_cast<double>(total);
}

std::vector<CountRecord> sample_witness_counts(const DensityOperator& rho, const WitnessSpec& w, double expected_total,
                                               RngSeed seed) {
  std::vector<CountRecord> out;
  const auto settings = w.settings();
  for (std::size_t k = 0; k < settings.size(); ++k) {
    out.push_back(sample_setting_counts(rho, w.qubits, settings[k], expected_total, {seed.seed, seed.stream * 64 + k}));
  }
  return out;
}

std::vector<double> estimate_witness_terms(const std::vector<CountRecord>& counts, const WitnessSpec& w) {
  const auto settings = w.settings();
  std::vector<double> out;
  for (std::size_t k = 0; k < w.terms.size(); ++k) {
    const std::string& want = settings[w.setting_of(k)];
    const CountRecord* rec = nullptr;
    for (const auto& c : counts) {
      if (c.qubits == w.qubits && c.setting == want) {
        rec = &c;
        break;
      }
    }
    if (!rec) {
      // Any record whose bases agree on the term's support will do.
      const auto& t = w.terms[k];
      for (const auto& c : counts) {
        bool ok = true;
        for (const auto& [q, l] : t.pauli.letters()) {
          const auto it = std::find(c.qubits.begin(), c.qubits.end(), q);
          ok = ok && it != c.qubits.end() && c.setting[static_cast<std::size_t>(it - c.qubits.begin())] == letter_char(l);
        }
        if (ok) {
          rec = &c;
          break;
        }
      }
    }
    if (!rec) throw std::invalid_argument("no count record measures witness term " + w.terms[k].word(w.qubits));
    out.push_back(w.terms[k].sign() * estimate_expectation(*rec, w.terms[k].pauli.support()));
  }
  return out;
}

double estimate_witness(const std::vector<CountRecord>& counts, const WitnessSpec& w) {
  return witness_value(w, estimate_witness_terms(counts, w));
}

Uncertainty monte_carlo_uncertainty(const CountStatistic& statistic, const std::vector<CountRecord>& counts, int trials,
                                    RngSeed seed, int threads) {
  if (trials < 100) throw std::invalid_argument("Monte Carlo needs at least 100 trials");
  threads = std::max(1, threads);
  std::vector<double> values(static_cast<std::size_t>(trials));
  auto run = [&](int first) {
    for (int t = first; t < trials; t += threads) {
      auto rng = make_rng({seed.seed, (seed.stream << 32) + static_cast<std::uint64_t>(t)});
      std::vector<CountRecord> resampled = counts;
      for (auto& rec : resampled) {
        for (auto& [bits, c] : rec.histogram) c = draw_poisson(static_cast<double>(c), rng);
      }
      values[static_cast<std::size_t>(t)] = statistic(resampled);
    }
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(run, w);
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / trials;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (trials - 1))};
}

void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records) {
  out << "setting,outcome,count\n";
  for (const auto& r : records) {
    for (const auto& [bits, c] : r.histogram) out << r.setting_label() << "," << bits << "," << c << "\n";
  }
}

std::vector<CountRecord> read_counts_csv(std::istream& in) {
  std::vector<CountRecord> out;
  std::map<std::string, std::size_t> index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 3) throw std::invalid_argument("counts line " + std::to_string(line_no) + ": expected 3 fields");
    if (fields[0] == "setting") continue;
    auto it = index.find(fields[0]);
    if (it == index.end()) {
      out.push_back(parse_setting_label(fields[0]));
      it = index.emplace(fields[0], out.size() - 1).first;
    }
    CountRecord& r = out[it->second];
    const std::string& bits = fields[1];
    if (bits.size() != r.qubits.size() || bits.find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("counts line " + std::to_string(line_no) + ": bad outcome '" + bits + "'");
    }
    std::uint64_t c = 0;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(fields[2], &used);
      if (used != fields[2].size() || v < 0) throw std::invalid_argument("negative");
      c = static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("counts line " + std::to_string(line_no) + ": bad count '" + fields[2] + "'");
    }
    r.histogram[bits] += c;
  }
  for (auto& r : out) {
    const std::size_t n = r.qubits.size();
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) r.histogram.try_emplace(bits_of(i, n), 0);
    r.expected_total = static_cast<double>(r.total());
  }
  return out;
}

double bisect(const std::function<double(double)>& f, double target, double lo, double hi, double tol) {
  double flo = f(lo) - target;
  const double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw std::domain_error("bisect: target is not bracketed");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace graphcode
