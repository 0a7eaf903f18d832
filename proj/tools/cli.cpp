#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "matchsig/census.hpp"
#include "matchsig/io.hpp"
#include "matchsig/matchgate.hpp"
#include "matchsig/pfaffian.hpp"
#include "matchsig/recognizer.hpp"

namespace matchsig::cli {

namespace {

enum class Format { Text, Json, Csv };

const std::map<std::string, Format> kFormats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};

unsigned thread_count() {
  if (const char* env = std::getenv("MATCHSIG_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<unsigned>(v);
  }
  return 0;
}

std::string exact_decimal(const mpq_class& q, int digits) { return CertifiedValue{q, q, q}.decimal(digits); }

// 1 - 1/s cut after six decimals with trailing zeros dropped: 0.5, 0.666666.
std::string truncated_decimal(const mpq_class& q, int digits) {
  mpz_class scaled = q.get_num();
  for (int i = 0; i < digits; ++i) scaled *= 10;
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  std::string s = r.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string join_values(const Signature& f, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) out += sep;
    out += f[static_cast<Bits>(k)].str();
  }
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string describe_witness(const Witness& w, int n) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ParityWitness>) {
          return "parity first=" + bits_to_string(x.first, n) + " second=" + bits_to_string(x.second, n);
        } else if constexpr (std::is_same_v<T, IdentityWitness>) {
          return "identity alpha=" + bits_to_string(x.alpha, n) + " p=" + bits_to_string(x.p, n) +
                 " value=" + x.value.str();
        } else {
          return "mismatch input=" + bits_to_string(x.input, n) + " expected=" + x.expected.str() +
                 " actual=" + x.actual.str();
        }
      },
      w);
}

void print_matrix(std::ostream& out, const SkewMatrix& m) {
  const int n = m.size();
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      cells.push_back(m.at(i, j).str());
      width = std::max(width, cells.back().size());
    }
  for (int i = 0; i < n; ++i) {
    out << " ";
    for (int j = 0; j < n; ++j) out << " " << std::setw(static_cast<int>(width)) << cells[static_cast<std::size_t>(i * n + j)];
    out << "\n";
  }
}

struct Context {
  std::ostream& out;
  Format format = Format::Text;
};

// recognize ------------------------------------------------------------------

struct RecognizeOpts {
  std::string path;
  bool naive = false;
  bool sparse = false;
};

void cmd_recognize(Context& ctx, const RecognizeOpts& o) {
  const Signature f = signature_from_json(load_json_file(o.path));
  RecognitionVerdict v;
  std::string method = "fast";
  if (o.naive || o.sparse) {
    method = o.sparse ? "naive-sparse" : "naive";
    v = recognize_naive(f, o.sparse ? IdentityScan::SparseSupport : IdentityScan::ParityRestricted);
  } else {
    v = recognize_fast(f);
  }
  const int n = f.bits();
  if (ctx.format == Format::Json) {
    Json j = verdict_to_json(v, n);
    j["method"] = method;
    ctx.out << j.dump() << "\n";
    return;
  }
  if (ctx.format == Format::Csv) {
    ctx.out << "status,method,steps,basepoint,scale,witness\n";
    ctx.out << to_string(v.status) << "," << method << "," << v.steps << ","
            << (v.certificate ? bits_to_string(v.certificate->basepoint, n) : "") << ","
            << csv_cell(v.certificate ? v.certificate->scale.str() : "") << ","
            << csv_cell(v.witness ? describe_witness(*v.witness, n) : "") << "\n";
    return;
  }
  ctx.out << "verdict: " << to_string(v.status) << "\n";
  if (v.certificate) {
    ctx.out << "basepoint: " << bits_to_string(v.certificate->basepoint, n) << "\n";
    ctx.out << "scale: " << v.certificate->scale.str() << "\n";
    ctx.out << "matrix:\n";
    print_matrix(ctx.out, v.certificate->matrix);
  }
  if (v.witness) ctx.out << "witness: " << describe_witness(*v.witness, n) << "\n";
  ctx.out << "steps: " << v.steps << " (" << method << ")\n";
}

// count / gamma / sparsity / compare -----------------------------------------

void cmd_count(Context& ctx, std::uint64_t s, int n) {
  const CountReport r = count(s, n);
  switch (ctx.format) {
    case Format::Json:
      ctx.out << count_to_json(r).dump() << "\n";
      break;
    case Format::Csv:
      ctx.out << "s,n,all,odd,even,normalized,semi_normalized_odd\n"
              << s << "," << n << "," << r.all << "," << r.odd << "," << r.even << "," << r.normalized << ","
              << r.semi_normalized_odd << "\n";
      break;
    case Format::Text:
      ctx.out << "all=" << r.all << " odd=" << r.odd << " normalized=" << r.normalized << "\n";
      ctx.out << "even=" << r.even << " semi_normalized_odd=" << r.semi_normalized_odd << "\n";
      break;
  }
}

void cmd_gamma(Context& ctx, std::uint64_t s, int digits) {
  const GammaValue g = gamma(s, digits);
  switch (ctx.format) {
    case Format::Json:
      ctx.out << Json{{"s", s}, {"digits", digits}, {"gamma", g.decimal()}, {"terms", g.terms}}.dump() << "\n";
      break;
    case Format::Csv:
      ctx.out << "s,gamma\n" << s << "," << g.decimal() << "\n";
      break;
    case Format::Text:
      ctx.out << g.decimal() << "\n";
      break;
  }
}

void cmd_sparsity(Context& ctx, std::uint64_t s, std::optional<int> n, int digits) {
  std::string exact, decimal;
  if (n) {
    const mpq_class p = expected_sparsity(s, *n);
    exact = p.get_str();
    decimal = exact_decimal(p, digits);
  } else {
    decimal = inverse_gamma(s, digits).decimal(digits);
  }
  switch (ctx.format) {
    case Format::Json: {
      Json j{{"s", s}, {"sparsity", decimal}};
      if (n) {
        j["n"] = *n;
        j["exact"] = exact;
      } else {
        j["n"] = nullptr;
      }
      ctx.out << j.dump() << "\n";
      break;
    }
    case Format::Csv:
      ctx.out << "s,n,exact,sparsity\n" << s << "," << (n ? std::to_string(*n) : "inf") << "," << exact << ","
              << decimal << "\n";
      break;
    case Format::Text:
      if (n) ctx.out << exact << " ~ ";
      ctx.out << decimal << "\n";
      break;
  }
}

void cmd_compare(Context& ctx, std::uint64_t s, int n) {
  const CardinalityComparison c = cardinality_comparison(s, n);
  const std::vector<std::pair<std::string, mpz_class>> rows{
      {"all functions", c.all_functions},
      {"even or odd parity", c.parity_functions},
      {"standard signatures", c.standard},
      {"symmetric realizable*", c.symmetric_realizable}};
  switch (ctx.format) {
    case Format::Json:
      ctx.out << Json{{"s", s},
                      {"n", n},
                      {"all_functions", c.all_functions.get_str()},
                      {"parity_functions", c.parity_functions.get_str()},
                      {"standard", c.standard.get_str()},
                      {"symmetric_realizable", c.symmetric_realizable.get_str()},
                      {"symmetric_caveat", c.symmetric_caveat}}
                     .dump()
              << "\n";
      break;
    case Format::Csv:
      ctx.out << "class,count\n";
      for (const auto& [name, v] : rows) ctx.out << csv_cell(name) << "," << v << "\n";
      break;
    case Format::Text: {
      std::size_t w = 0;
      for (const auto& row : rows) w = std::max(w, row.first.size());
      ctx.out << "s=" << s << " n=" << n << "\n";
      for (const auto& [name, v] : rows) ctx.out << std::left << std::setw(static_cast<int>(w) + 2) << name << v << "\n";
      ctx.out << "* " << c.symmetric_caveat << "\n";
      break;
    }
  }
}

// sample ---------------------------------------------------------------------

struct SampleOpts {
  std::string field;
  int n = 0;
  std::string parity = "even";
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  bool stat = false;
  std::string probe;
  std::string output;
};

void cmd_sample(Context& ctx, const SampleOpts& o) {
  const Field field = Field::parse(o.field);
  if (o.stat) {
    if (o.parity == "normalized") throw std::invalid_argument("--stat supports even or odd parity");
    const Parity parity = o.parity == "odd" ? Parity::StrictlyOdd : Parity::StrictlyEven;
    Bits probe = 0;
    if (!o.probe.empty()) {
      if (static_cast<int>(o.probe.size()) != o.n) throw std::invalid_argument("--probe needs exactly n bits");
      probe = bits_from_string(o.probe);
    } else if (parity == Parity::StrictlyOdd) {
      probe = unit(1);
    }
    if ((weight(probe) % 2 == 1) != (parity == Parity::StrictlyOdd))
      throw std::invalid_argument("--probe must have the sampled parity");
    const SparsityTrial t = run_sparsity_trial(field, o.n, parity, o.trials, o.seed, probe, thread_count());
    const double empirical = static_cast<double>(t.nonzero_at_probe) / static_cast<double>(t.trials);
    std::string expected = "n/a";
    if (auto card = field.cardinality()) expected = exact_decimal(expected_sparsity(*card, o.n), 6);
    switch (ctx.format) {
      case Format::Json:
        ctx.out << Json{{"field", field.name()},      {"n", o.n},
                        {"parity", o.parity},         {"seed", o.seed},
                        {"trials", t.trials},         {"probe", bits_to_string(probe, o.n)},
                        {"nonzero_at_probe", t.nonzero_at_probe}, {"empirical", empirical},
                        {"expected", expected},       {"accepted", t.accepted}}
                       .dump()
                << "\n";
        break;
      case Format::Csv:
        ctx.out << "field,n,parity,seed,trials,probe,nonzero_at_probe,empirical,expected,accepted\n"
                << field.name() << "," << o.n << "," << o.parity << "," << o.seed << "," << t.trials << ","
                << bits_to_string(probe, o.n) << "," << t.nonzero_at_probe << "," << std::setprecision(6)
                << std::fixed << empirical << "," << expected << "," << t.accepted << "\n";
        break;
      case Format::Text:
        ctx.out << "trials=" << t.trials << " probe=" << bits_to_string(probe, o.n)
                << " nonzero=" << t.nonzero_at_probe << "\n"
                << "empirical=" << std::setprecision(6) << std::fixed << empirical << " expected=" << expected
                << "\n"
                << "accepted=" << t.accepted << "/" << t.trials << "\n";
        break;
    }
    return;
  }

  Rng rng(o.seed);
  std::ofstream file;
  std::ostream* sink = &ctx.out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::invalid_argument("cannot write '" + o.output + "'");
    sink = &file;
  }
  if (ctx.format == Format::Csv) *sink << "trial,values\n";
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    Signature f = o.parity == "normalized" ? sample_normalized(field, o.n, rng)
                  : o.parity == "odd"      ? sample_parity(field, o.n, Parity::StrictlyOdd, rng)
                                           : sample_parity(field, o.n, Parity::StrictlyEven, rng);
    if (ctx.format == Format::Csv)
      *sink << t << "," << csv_cell(join_values(f, " ")) << "\n";
    else
      *sink << signature_to_json(f).dump() << "\n";
  }
}

// enumerate ------------------------------------------------------------------

void cmd_enumerate(Context& ctx, const std::string& field_name, int n, const std::string& space_name,
                   bool count_only) {
  const Field field = Field::parse(field_name);
  const SearchSpace space = space_name == "full"     ? SearchSpace::Full
                            : space_name == "parity" ? SearchSpace::ParitySupported
                                                     : SearchSpace::Auto;
  std::uint64_t found = 0;
  if (ctx.format == Format::Csv && !count_only) ctx.out << "index,values\n";
  const std::uint64_t examined = for_each_standard(field, n, space, [&](const Signature& f) {
    if (!count_only) {
      if (ctx.format == Format::Json)
        ctx.out << signature_to_json(f).dump() << "\n";
      else if (ctx.format == Format::Csv)
        ctx.out << found << "," << csv_cell(join_values(f, " ")) << "\n";
      else
        ctx.out << "[" << join_values(f, ", ") << "]\n";
    }
    ++found;
  });
  if (ctx.format == Format::Json)
    ctx.out << Json{{"standard", found}, {"examined", examined}}.dump() << "\n";
  else if (ctx.format == Format::Text)
    ctx.out << "standard=" << found << " examined=" << examined << "\n";
  else if (count_only)
    ctx.out << "standard,examined\n" << found << "," << examined << "\n";
}

// sixbit ---------------------------------------------------------------------

void cmd_sixbit(Context& ctx, bool check) {
  constexpr int n = 6;
  std::vector<Bits> inputs;
  for (Bits x = 0; x < (Bits{1} << n); ++x)
    if (weight(x) % 2 == 0) inputs.push_back(x);

  if (check) {
    // Every polynomial must have (2k-1)!! monomials, match the numeric
    // Pfaffian of the corresponding minor on random matrices, and list its
    // monomials in canonical order without repeats.
    Rng rng(0);
    const Field field = Field::prime(1000003);
    std::vector<SkewMatrix> samples;
    for (int t = 0; t < 4; ++t) {
      SkewMatrix m(n, field);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) m.set(i, j, random_element(field, rng));
      samples.push_back(m);
    }
    std::vector<Signature> tables;
    for (const auto& m : samples) tables.push_back(signature_from_matrix(m));
    std::size_t verified = 0;
    for (Bits x : inputs) {
      const auto poly = symbolic_minor(x);
      if (poly.size() != double_factorial_odd(weight(x) / 2))
        throw std::logic_error("monomial count mismatch at " + bits_to_string(x, n));
      auto by_factors = [](const SignedMonomial& a, const SignedMonomial& b) { return a.factors < b.factors; };
      auto same_factors = [](const SignedMonomial& a, const SignedMonomial& b) { return a.factors == b.factors; };
      if (!std::is_sorted(poly.begin(), poly.end(), by_factors) ||
          std::adjacent_find(poly.begin(), poly.end(), same_factors) != poly.end())
        throw std::logic_error("monomials out of order at " + bits_to_string(x, n));
      for (std::size_t t = 0; t < samples.size(); ++t)
        if (!(evaluate(poly, samples[t]) == tables[t][x]))
          throw std::logic_error("polynomial disagrees with the Pfaffian at " + bits_to_string(x, n));
      ++verified;
    }
    ctx.out << verified << " even-weight entries verified; f(111111): " << symbolic_minor(0b111111).size()
            << " monomials\n";
    return;
  }

  if (ctx.format == Format::Json) {
    Json arr = Json::array();
    for (Bits x : inputs) {
      const auto poly = symbolic_minor(x);
      arr.push_back(Json{{"x", bits_to_string(x, n)}, {"monomials", poly.size()}, {"f", format_polynomial(poly)}});
    }
    ctx.out << arr.dump() << "\n";
  } else if (ctx.format == Format::Csv) {
    ctx.out << "x,monomials,f\n";
    for (Bits x : inputs) {
      const auto poly = symbolic_minor(x);
      ctx.out << bits_to_string(x, n) << "," << poly.size() << "," << csv_cell(format_polynomial(poly)) << "\n";
    }
  } else {
    for (Bits x : inputs)
      ctx.out << "f(" << bits_to_string(x, n) << ") = " << format_polynomial(symbolic_minor(x)) << "\n";
  }
}

// perfmatch / minors ---------------------------------------------------------

void cmd_perfmatch(Context& ctx, const std::string& path, bool with_signature) {
  const Matchgate g = matchgate_from_json(load_json_file(path));
  const Element pm = perfmatch(g);
  if (!with_signature) {
    if (ctx.format == Format::Json)
      ctx.out << Json{{"perfmatch", pm.str()}}.dump() << "\n";
    else if (ctx.format == Format::Csv)
      ctx.out << "perfmatch\n" << csv_cell(pm.str()) << "\n";
    else
      ctx.out << "perfmatch=" << pm.str() << "\n";
    return;
  }
  const Signature f = matchgate_signature(g);
  const RecognitionVerdict v = recognize_naive(f);
  const int n = f.bits();
  if (ctx.format == Format::Json) {
    ctx.out << Json{{"perfmatch", pm.str()}, {"signature", signature_to_json(f)}, {"verdict", verdict_to_json(v, n)}}
                   .dump()
            << "\n";
  } else if (ctx.format == Format::Csv) {
    ctx.out << "x,f\n";
    for (Bits x = 0; x < f.size(); ++x) ctx.out << bits_to_string(x, n) << "," << csv_cell(f[x].str()) << "\n";
  } else {
    ctx.out << "perfmatch=" << pm.str() << "\n";
    for (Bits x = 0; x < f.size(); ++x) ctx.out << "f(" << bits_to_string(x, n) << ") = " << f[x].str() << "\n";
    ctx.out << "verdict: " << to_string(v.status) << "\n";
    if (v.witness) ctx.out << "witness: " << describe_witness(*v.witness, n) << "\n";
  }
}

void cmd_minors(Context& ctx, const std::string& path) {
  const SkewMatrix m = matrix_from_json(load_json_file(path));
  const Signature f = signature_from_matrix(m);
  const int n = f.bits();
  if (ctx.format == Format::Json) {
    ctx.out << signature_to_json(f).dump() << "\n";
  } else if (ctx.format == Format::Csv) {
    ctx.out << "x,f\n";
    for (Bits x = 0; x < f.size(); ++x) ctx.out << bits_to_string(x, n) << "," << csv_cell(f[x].str()) << "\n";
  } else {
    for (Bits x = 0; x < f.size(); ++x) ctx.out << "f(" << bits_to_string(x, n) << ") = " << f[x].str() << "\n";
  }
}

// tables / crossover ---------------------------------------------------------

void cmd_tables(Context& ctx, const std::string& which, int digits) {
  const std::vector<std::uint64_t> sizes{2, 3, 4, 5, 7, 8, 9};
  const bool gamma_table = which != "sparsity";
  const bool sparsity_table = which != "gamma";

  if (ctx.format == Format::Json) {
    Json j = Json::object();
    if (gamma_table) {
      Json rows = Json::array();
      for (auto s : sizes) rows.push_back(Json{{"s", s}, {"gamma", gamma(s, digits).decimal()}});
      j["gamma"] = rows;
    }
    if (sparsity_table) {
      Json rows = Json::array();
      for (auto s : sizes) {
        mpq_class third = 1 - mpq_class(mpz_class(1), mpz_class(static_cast<unsigned long>(s)));
        rows.push_back(Json{{"s", s},
                            {"inverse_gamma", inverse_gamma(s, digits).decimal(digits)},
                            {"one_minus_inverse_s", third.get_str()}});
      }
      j["sparsity"] = rows;
    }
    ctx.out << j.dump() << "\n";
    return;
  }

  const bool csv = ctx.format == Format::Csv;
  if (gamma_table) {
    ctx.out << (csv ? "s,gamma\n" : "s  gamma(s)\n");
    for (auto s : sizes) ctx.out << s << (csv ? "," : "  ") << gamma(s, digits).decimal() << "\n";
  }
  if (gamma_table && sparsity_table) ctx.out << "\n";
  if (sparsity_table) {
    ctx.out << (csv ? "s,inverse_gamma,one_minus_inverse_s\n" : "s  1/gamma(s)  1-1/s\n");
    for (auto s : sizes) {
      mpq_class third = 1 - mpq_class(mpz_class(1), mpz_class(static_cast<unsigned long>(s)));
      std::string inv = inverse_gamma(s, digits).decimal(digits);
      if (csv)
        ctx.out << s << "," << inv << "," << third.get_str() << "\n";
      else
        ctx.out << s << "  " << std::left << std::setw(11) << inv << " " << truncated_decimal(third, digits) << "\n";
    }
  }
}

void cmd_crossover(Context& ctx, int max_n, std::uint64_t seed) {
  if (max_n < 1 || max_n > 12) throw std::invalid_argument("--max-n must be between 1 and 12");
  const Field field = Field::prime(2);
  Rng rng(seed);
  const bool csv = ctx.format == Format::Csv;
  Json rows = Json::array();
  if (ctx.format == Format::Text) ctx.out << " n   naive steps    fast steps   ratio   ratio/2^n\n";
  if (csv) ctx.out << "n,naive_steps,fast_steps,ratio\n";
  for (int n = 1; n <= max_n; ++n) {
    const Signature f = sample_parity(field, n, Parity::StrictlyEven, rng);
    const auto naive = recognize_naive(f, IdentityScan::Exhaustive).steps;
    const auto fast = recognize_fast(f).steps;
    const double ratio = static_cast<double>(naive) / static_cast<double>(std::max<std::uint64_t>(fast, 1));
    if (ctx.format == Format::Json) {
      rows.push_back(Json{{"n", n}, {"naive_steps", naive}, {"fast_steps", fast}, {"ratio", ratio}});
    } else if (csv) {
      ctx.out << n << "," << naive << "," << fast << "," << std::setprecision(3) << std::fixed << ratio << "\n";
    } else {
      ctx.out << std::right << std::setw(2) << n << std::setw(14) << naive << std::setw(14) << fast << std::setw(8)
              << std::setprecision(2) << std::fixed << ratio << std::setw(12) << std::setprecision(4)
              << ratio / static_cast<double>(Bits{1} << n) << "\n";
    }
  }
  if (ctx.format == Format::Json) ctx.out << rows.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard signatures of matchgates: recognition, counting and sampling"};
  app.name("matchsig");
  app.require_subcommand(1);

  Context ctx{out};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", ctx.format, "text, json or csv")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case).description(""))
        ->option_text("FORMAT [text]");
  };

  std::function<void()> action;

  RecognizeOpts rec;
  auto* recognize = app.add_subcommand("recognize", "Decide whether a signature file is standard");
  recognize->add_option("signature", rec.path, "Signature JSON file")->required();
  recognize->add_flag("--naive", rec.naive, "Use the Matchgate Identities instead of the rebuild");
  recognize->add_flag("--sparse", rec.sparse, "Naive check restricted to identities touching the support");
  add_format(recognize);
  recognize->callback([&] { action = [&] { cmd_recognize(ctx, rec); }; });

  std::uint64_t s = 0;
  int n = 0;
  int digits = 6;

  auto* count_cmd = app.add_subcommand("count", "Number of standard signatures over a field of size s");
  count_cmd->add_option("--s", s, "Field size")->required();
  count_cmd->add_option("--n", n, "Number of bits")->required();
  add_format(count_cmd);
  count_cmd->callback([&] { action = [&] { cmd_count(ctx, s, n); }; });

  auto* gamma_cmd = app.add_subcommand("gamma", "The constant gamma(s) to a given number of decimals");
  gamma_cmd->add_option("--s", s, "Field size")->required();
  gamma_cmd->add_option("--digits", digits, "Decimals")->capture_default_str();
  add_format(gamma_cmd);
  gamma_cmd->callback([&] { action = [&] { cmd_gamma(ctx, s, digits); }; });

  std::optional<int> sparsity_n;
  auto* sparsity = app.add_subcommand("sparsity", "Expected fraction of non-zero entries");
  sparsity->add_option("--s", s, "Field size")->required();
  auto* sp_n = sparsity->add_option("--n", sparsity_n, "Number of bits");
  auto* sp_limit = sparsity->add_flag("--limit", "Limit as n grows (1/gamma)");
  sp_n->excludes(sp_limit);
  sparsity->add_option("--digits", digits, "Decimals")->capture_default_str();
  add_format(sparsity);
  sparsity->callback([&] {
    if (!sparsity_n && sp_limit->count() == 0) throw CLI::RequiredError("--n or --limit");
    action = [&] { cmd_sparsity(ctx, s, sparsity_n, digits); };
  });

  auto* compare = app.add_subcommand("compare", "Sizes of several classes of n-bit functions");
  compare->add_option("--s", s, "Field size")->required();
  compare->add_option("--n", n, "Number of bits")->required();
  add_format(compare);
  compare->callback([&] { action = [&] { cmd_compare(ctx, s, n); }; });

  SampleOpts smp;
  auto* sample = app.add_subcommand("sample", "Uniform standard signatures (seed defaults to 0)");
  sample->add_option("--field", smp.field, "gf<p>, gf4, gf8 or gf9")->required();
  sample->add_option("--n", smp.n, "Number of bits")->required();
  sample->add_option("--parity", smp.parity, "even, odd or normalized")
      ->check(CLI::IsMember({"even", "odd", "normalized"}))
      ->capture_default_str();
  sample->add_option("--seed", smp.seed, "Random seed")->capture_default_str();
  sample->add_option("--trials", smp.trials, "Number of draws")->capture_default_str();
  sample->add_flag("--stat", smp.stat, "Report how often f(probe) is non-zero instead of printing draws");
  sample->add_option("--probe", smp.probe, "Probe input for --stat, written x_n..x_1");
  sample->add_option("-o,--output", smp.output, "Write draws to a file");
  add_format(sample);
  sample->callback([&] { action = [&] { cmd_sample(ctx, smp); }; });

  std::string field_name, space = "auto";
  bool count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "Every standard signature by exhaustive search");
  enumerate->add_option("--field", field_name, "Field descriptor")->required();
  enumerate->add_option("--n", n, "Number of bits")->required();
  enumerate->add_option("--space", space, "auto, full or parity")
      ->check(CLI::IsMember({"auto", "full", "parity"}))
      ->capture_default_str();
  enumerate->add_flag("--count-only", count_only, "Print only the totals");
  add_format(enumerate);
  enumerate->callback([&] { action = [&] { cmd_enumerate(ctx, field_name, n, space, count_only); }; });

  bool check = false;
  auto* sixbit = app.add_subcommand("sixbit", "Pfaffian minors of a symbolic 6x6 matrix");
  sixbit->add_flag("--check", check, "Verify the listing instead of printing it");
  add_format(sixbit);
  sixbit->callback([&] { action = [&] { cmd_sixbit(ctx, check); }; });

  std::string path;
  bool with_signature = false;
  auto* perfmatch_cmd = app.add_subcommand("perfmatch", "PerfMatch of a matchgate file");
  perfmatch_cmd->add_option("matchgate", path, "Matchgate JSON file")->required();
  perfmatch_cmd->add_flag("--signature", with_signature, "Also print the signature and its verdict");
  add_format(perfmatch_cmd);
  perfmatch_cmd->callback([&] { action = [&] { cmd_perfmatch(ctx, path, with_signature); }; });

  auto* minors = app.add_subcommand("minors", "Signature of Pfaffian minors of a matrix file");
  minors->add_option("matrix", path, "Matrix JSON file")->required();
  add_format(minors);
  minors->callback([&] { action = [&] { cmd_minors(ctx, path); }; });

  std::string which = "all";
  auto* tables = app.add_subcommand("tables", "The gamma(s) and 1/gamma(s) tables");
  tables->add_option("--table", which, "gamma, sparsity or all")
      ->check(CLI::IsMember({"gamma", "sparsity", "all"}))
      ->capture_default_str();
  tables->add_option("--digits", digits, "Decimals")->capture_default_str();
  add_format(tables);
  tables->callback([&] { action = [&] { cmd_tables(ctx, which, digits); }; });

  int max_n = 10;
  std::uint64_t seed = 0;
  auto* crossover = app.add_subcommand("crossover", "Step counts of the naive and fast recognizers");
  crossover->add_option("--max-n", max_n, "Largest n")->capture_default_str();
  crossover->add_option("--seed", seed, "Random seed")->capture_default_str();
  add_format(crossover);
  crossover->callback([&] { action = [&] { cmd_crossover(ctx, max_n, seed); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << "run with --help for usage\n";
    return 2;
  }

  try {
    action();
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace matchsig::cli
