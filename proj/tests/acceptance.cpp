// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "properties.hpp"

using namespace matchsig;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

// Every function supported on the even-weight inputs or on the odd-weight
// inputs, each visited once (the zero function once).
void for_each_parity_supported(const Field& field, int n, const std::function<void(const Signature&)>& visit) {
  const auto elems = field.elements();
  const std::size_t size = std::size_t{1} << n;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<Bits> slots;
    for (Bits x = 0; x < size; ++x)
      if (weight(x) % 2 == parity) slots.push_back(x);
    std::vector<std::size_t> digits(slots.size(), 0);
    while (true) {
      bool zero = true;
      std::vector<Element> v(size, field.zero());
      for (std::size_t k = 0; k < slots.size(); ++k) {
        v[slots[k]] = elems[digits[k]];
        zero = zero && digits[k] == 0;
      }
      if (!(zero && parity == 1)) visit(Signature(n, field, std::move(v)));
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == elems.size()) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
}

struct Space {
  Field field;
  int n;
  bool full;
  long expected;
};

const std::vector<Space>& criterion_spaces() {
  static const std::vector<Space> spaces{{Field::prime(2), 1, true, 3},
                                         {Field::prime(2), 2, true, 7},
                                         {Field::prime(2), 3, true, 31},
                                         {Field::prime(2), 4, false, 271},
                                         {Field::prime(3), 2, true, 17}};
  return spaces;
}

void visit_space(const Space& sp, const std::function<void(const Signature&)>& visit) {
  if (sp.full)
    oracle::for_each_function(sp.field, sp.n, visit);
  else
    for_each_parity_supported(sp.field, sp.n, visit);
}

std::string label(const Space& sp) {
  return sp.field.name() + " n=" + std::to_string(sp.n);
}

std::string criterion_counts() {
  const auto t0 = Clock::now();
  std::ostringstream detail;
  for (const auto& sp : criterion_spaces()) {
    long accepted = 0;
    visit_space(sp, [&](const Signature& f) { accepted += recognize_fast(f).accepted(); });
    const CountReport r = count(*sp.field.cardinality(), sp.n);
    expect(r.all == accepted, label(sp) + ": filter " + std::to_string(accepted) + ", formula " + r.all.get_str());
    expect(accepted == sp.expected, label(sp) + ": expected " + std::to_string(sp.expected));
    detail << label(sp) << "=" << accepted << " ";
  }
  const double secs = seconds_since(t0);
  expect(secs < 30, "runtime " + std::to_string(secs) + " s");
  detail << std::fixed << std::setprecision(2) << "(" << secs << " s)";
  return detail.str();
}

const std::vector<std::uint64_t> kTableSizes{2, 3, 4, 5, 7, 8, 9};

std::string criterion_gamma() {
  const std::vector<std::string> table{"2.384231", "1.564934", "1.355910", "1.260501",
                                       "1.170149", "1.145129", "1.126565"};
  for (std::size_t k = 0; k < kTableSizes.size(); ++k) {
    const std::string got = gamma(kTableSizes[k], 6).decimal();
    expect(got == table[k], "s=" + std::to_string(kTableSizes[k]) + ": " + got);
  }
  return "7 values to 6 decimals";
}

std::string criterion_sparsity_table() {
  const std::vector<std::string> table{"0.419422", "0.639005", "0.737512", "0.793335",
                                       "0.854592", "0.873264", "0.887654"};
  for (std::size_t k = 0; k < kTableSizes.size(); ++k) {
    const std::uint64_t s = kTableSizes[k];
    const std::string got = inverse_gamma(s, 6).decimal(6);
    expect(got == table[k], "s=" + std::to_string(s) + ": " + got);
    const mpq_class third = 1 - mpq_class(1, static_cast<unsigned long>(s));
    expect(third.get_den() == s && third.get_num() == s - 1, "1-1/s not exact for s=" + std::to_string(s));
  }
  return "7 values to 6 decimals, 1-1/s exact";
}

std::string criterion_sampler() {
  const auto t0 = Clock::now();
  const std::uint64_t trials = 100000;
  const SparsityTrial t = run_sparsity_trial(Field::prime(2), 10, Parity::StrictlyEven, trials, 0);
  const mpq_class expected = expected_sparsity(2, 10);
  const double p = expected.get_d();
  const double empirical = static_cast<double>(t.nonzero_at_probe) / static_cast<double>(trials);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  const double secs = seconds_since(t0);
  std::ostringstream detail;
  detail << std::fixed << std::setprecision(6) << "empirical " << empirical << ", expected " << p << ", 3 sigma "
         << 3 * sigma << ", accepted " << t.accepted << "/" << trials << std::setprecision(2) << " (" << secs << " s)";
  expect(t.trials == trials, "trial count");
  expect(std::fabs(empirical - p) <= 0.005, detail.str());
  expect(t.accepted == trials, detail.str());
  expect(secs < 60, detail.str());
  return detail.str();
}

std::string criterion_sixbit() {
  std::ifstream in(std::string(MATCHSIG_TEST_DATA) + "/sixbit.txt");
  expect(bool(in), "cannot open sixbit.txt");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) lines.push_back(line);
  std::vector<std::string> produced;
  for (Bits x = 0; x < 64; ++x) {
    if (weight(x) % 2) continue;
    const auto poly = symbolic_minor(x);
    const int k = weight(x) / 2;
    expect(poly.size() == double_factorial_odd(k), "monomial count at " + bits_to_string(x, 6));
    expect(double_factorial_odd(k) == std::vector<std::uint64_t>{1, 1, 3, 15}[static_cast<std::size_t>(k)],
           "(2k-1)!! at k=" + std::to_string(k));
    produced.push_back("f(" + bits_to_string(x, 6) + ") = " + format_polynomial(poly));
  }
  expect(produced.size() == 32, "expected 32 entries");
  expect(lines.size() == 32, "reference has " + std::to_string(lines.size()) + " lines");
  for (std::size_t k = 0; k < 32; ++k) expect(produced[k] == lines[k], "mismatch: " + produced[k]);
  return "32 polynomials identical, counts 1, 1, 3, 15";
}

std::string criterion_dual_route() {
  const Field f2 = Field::prime(2);
  for (unsigned bits = 0; bits < 64; ++bits) {
    std::vector<Element> upper;
    for (int k = 0; k < 6; ++k) upper.push_back(f2.from_int((bits >> k) & 1));
    const SkewMatrix m(4, f2, upper);
    expect(rebuild_recursive(m) == signature_from_matrix(m), "GF(2) matrix " + std::to_string(bits));
  }
  const Field f7 = Field::prime(7);
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const SkewMatrix m = oracle::random_matrix(f7, 6, rng);
    expect(rebuild_recursive(m) == signature_from_matrix(m), "GF(7) matrix " + std::to_string(t));
  }
  return "64 GF(2) n=4 and 100 GF(7) n=6 matrices";
}

std::string criterion_pfaffian() {
  Rng rng(7);
  const Field f7 = Field::prime(7);
  const Field q = Field::rational();
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 8;
    const bool rational = (t / 8) % 2;
    const Field& f = rational ? q : f7;
    const SkewMatrix m = rational ? oracle::random_rational_matrix(f, n, rng) : oracle::random_matrix(f, n, rng);
    const Element pf = pfaffian(m);
    expect(pf * pf == oracle::determinant(oracle::dense(m), f), "Pf^2 != det on draw " + std::to_string(t));
    if (n <= 6) {
      const Element direct = oracle::pfaffian_by_permutations(m);
      expect(pf == direct, "expansion vs permutation sum on draw " + std::to_string(t));
      expect(pfaffian_by_pairings(m) == direct, "pairings vs permutation sum on draw " + std::to_string(t));
    }
  }
  return "500 matrices up to 8x8 over GF(7) and Q";
}

void same_verdict(const Signature& f, const std::string& where) {
  const RecognitionVerdict fast = recognize_fast(f);
  const RecognitionVerdict naive = recognize_naive(f);
  expect(fast.status == naive.status, where + ": fast " + to_string(fast.status) + ", naive " + to_string(naive.status));
  if (fast.certificate) expect(verify_certificate(f, *fast.certificate), where + ": certificate");
  if (fast.witness) expect(verify_witness(f, *fast.witness), where + ": fast witness");
  if (naive.witness) expect(verify_witness(f, *naive.witness), where + ": naive witness");
}

std::string criterion_recognizer(std::ostream& table) {
  std::uint64_t compared = 0;
  for (const auto& sp : criterion_spaces())
    visit_space(sp, [&](const Signature& f) {
      same_verdict(f, label(sp));
      ++compared;
    });

  // Uniform functions are almost never parity-supported, so two thirds of the
  // draws are standard signatures or one-entry perturbations of them.
  const Field f7 = Field::prime(7);
  Rng rng(8);
  std::uint64_t standard = 0;
  for (int t = 0; t < 10000; ++t) {
    Signature g = oracle::random_function(f7, 5, rng);
    if (t % 3 == 1) {
      g = sample_parity(f7, 5, t % 2 ? Parity::StrictlyOdd : Parity::StrictlyEven, rng);
    } else if (t % 3 == 2) {
      std::vector<Element> v(g.size(), f7.zero());
      const Signature base = sample_parity(f7, 5, Parity::StrictlyEven, rng);
      for (Bits x = 0; x < g.size(); ++x) v[x] = base[x];
      Bits x = 0;
      do x = static_cast<Bits>(uniform_below(g.size(), rng)); while (weight(x) % 2);
      v[x] += random_element(f7, rng);
      g = Signature(5, f7, std::move(v));
    }
    same_verdict(g, "GF(7) n=5 draw " + std::to_string(t));
    standard += recognize_fast(g).accepted();
    ++compared;
  }

  const auto t0 = Clock::now();
  const Signature big = sample_parity(Field::prime(2), 16, Parity::StrictlyEven, rng);
  const RecognitionVerdict v = recognize_fast(big);
  const double secs = seconds_since(t0);
  expect(v.accepted() && verify_certificate(big, *v.certificate), "n=16 signature not accepted");
  expect(secs < 5, "n=16 took " + std::to_string(secs) + " s");

  Rng cross(0);
  std::vector<double> scaled;
  table << " n   naive steps    fast steps     ratio   ratio/2^n\n";
  for (int n = 1; n <= 10; ++n) {
    const Signature f = sample_parity(Field::prime(2), n, Parity::StrictlyEven, cross);
    const auto naive = recognize_naive(f, IdentityScan::Exhaustive).steps;
    const auto fast = recognize_fast(f).steps;
    const double ratio = static_cast<double>(naive) / static_cast<double>(fast);
    scaled.push_back(ratio / static_cast<double>(Bits{1} << n));
    table << std::setw(2) << n << std::setw(14) << naive << std::setw(14) << fast << std::fixed << std::setprecision(2)
          << std::setw(10) << ratio << std::setw(12) << std::setprecision(4) << scaled.back() << "\n";
  }
  // ratio / 2^n settles to a positive constant: the ratio grows like 2^n.
  for (std::size_t k = 5; k < scaled.size(); ++k)
    expect(scaled[k] > 0.5 * scaled[4], "ratio/2^n collapsed at n=" + std::to_string(k + 1));

  std::ostringstream detail;
  detail << compared << " functions compared (" << standard << " standard GF(7) draws), n=16 in " << std::fixed
         << std::setprecision(3) << secs << " s, ratio/2^n at n=10 " << std::setprecision(4) << scaled.back();
  return detail.str();
}

std::string criterion_switch() {
  for (std::uint64_t p : {2, 3, 5}) {
    const Field f = Field::prime(p);
    std::vector<Element> v(16, f.zero());
    v[0b0000] = v[0b0101] = v[0b1010] = f.one();
    v[0b1111] = -f.one();
    const Signature s(4, f, v);
    for (const auto& verdict : {recognize_fast(s), recognize_naive(s)}) {
      expect(verdict.status == Verdict::Standard, f.name() + ": rejected");
      const SkewMatrix& m = verdict.certificate->matrix;
      for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
          const bool on = (i == 1 && j == 3) || (i == 2 && j == 4);
          expect(m.at(i, j) == (on ? f.one() : f.zero()), f.name() + ": certificate entry");
        }
      expect(verify_certificate(s, *verdict.certificate), f.name() + ": certificate check");
    }
  }
  return "accepted over GF(2), GF(3), GF(5) with m(1,3)=m(2,4)=1";
}

std::string criterion_properties() {
  for (const auto& [field, max_n] : {std::pair{Field::prime(2), 4}, std::pair{Field::prime(3), 3}}) {
    const std::string where = " over " + field.name();
    std::string r;
    if (!(r = properties::restriction_closure(field, max_n)).empty()) throw Failure{"restriction" + where + ": " + r};
    if (!(r = properties::shift_set_law(field, max_n)).empty()) throw Failure{"shift set" + where + ": " + r};
    if (!(r = properties::flip_parity_bijection(field, max_n)).empty()) throw Failure{"flip" + where + ": " + r};
    if (!(r = properties::basepoint_independence(field, max_n)).empty()) throw Failure{"basepoint" + where + ": " + r};
  }
  return "GF(2) n<=4, GF(3) n<=3";
}

}  // namespace

int main() {
  std::ostringstream crossover;
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"counting vs exhaustive filter", criterion_counts},
      {"gamma table", criterion_gamma},
      {"sparsity table", criterion_sparsity_table},
      {"sampler statistics", criterion_sampler},
      {"six-bit minor listing", criterion_sixbit},
      {"dual-route equality", criterion_dual_route},
      {"Pfaffian soundness", criterion_pfaffian},
      {"recognizer equivalence and scaling", [&] { return criterion_recognizer(crossover); }},
      {"switch function", criterion_switch},
      {"recursion and closure properties", criterion_properties},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::string verdict, detail;
    try {
      detail = criteria[k].second();
      verdict = "PASS";
    } catch (const Failure& e) {
      detail = e.what;
      verdict = "FAIL";
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      verdict = "FAIL";
    }
    failed += verdict == "FAIL";
    std::cout << verdict << " " << (k + 1) << " " << criteria[k].first << ": " << detail << std::endl;
  }
  std::cout << "\ncrossover (GF(2), seed 0)\n" << crossover.str();
  return failed ? 1 : 0;
}
