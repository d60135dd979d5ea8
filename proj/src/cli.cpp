#include "dwbc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace dwbc {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(const Clock::time_point& t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format_sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// |u - v| relative to max(1, |u|, |v|); the equality measure used for
// every comparison in this tool.
double cdev(const Complex& u, const Complex& v) {
  return std::abs(u - v) / std::max({1.0, std::abs(u), std::abs(v)});
}

Complex ratio_f(const Complex& u, const Complex& v, const Complex& lam) {
  const Complex b = weight_b(u, v, lam);
  if (std::abs(b) <= kDegeneracyThreshold)
    throw DegenerateRapidities("coincident values in an f-ratio");
  return weight_a(u, v, lam) / b;
}

Complex ratio_g(const Complex& u, const Complex& v, const Complex& lam) {
  const Complex b = weight_b(u, v, lam);
  if (std::abs(b) <= kDegeneracyThreshold)
    throw DegenerateRapidities("coincident values in a g-ratio");
  return weight_c(u, v, lam) / b;
}

ModelParams draw_params(std::uint64_t seed, int n) {
  ParamSampler s(seed);
  ModelParams p;
  p.x = s.rapidities(n);
  p.y = s.rapidities(n);
  p.lambda = s.lambda();
  return p;
}

Json complex_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

void print_params_human(std::ostream& out, const ModelParams& p) {
  out << "lambda: " << format_complex(p.lambda) << "\n";
  out << "x:";
  for (const Complex& z : p.x) out << ' ' << format_complex(z);
  out << "\nx count: " << p.x.size() << "\ny:";
  for (const Complex& z : p.y) out << ' ' << format_complex(z);
  out << "\n";
}

Json params_json(const ModelParams& p) {
  Json j;
  j["lambda"] = complex_json(p.lambda);
  Json xs = Json::array();
  for (const Complex& z : p.x) xs.push_back(complex_json(z));
  Json ys = Json::array();
  for (const Complex& z : p.y) ys.push_back(complex_json(z));
  j["x"] = std::move(xs);
  j["y"] = std::move(ys);
  return j;
}

void print_records_human(std::ostream& out,
                         const std::vector<ResultRecord>& records) {
  for (const ResultRecord& r : records) {
    out << r.name << " = " << format_complex(r.value) << "\n";
    if (r.oracle_value)
      out << r.name << " oracle = " << format_complex(*r.oracle_value)
          << " deviation = " << format_sci(r.deviation.value_or(0.0)) << " ["
          << r.status << "]\n";
    else if (r.status != "OK")
      out << r.name << " [" << r.status << "]\n";
  }
}

Json records_json(const std::vector<ResultRecord>& records) {
  Json arr = Json::array();
  for (const ResultRecord& r : records) {
    Json j;
    j["name"] = r.name;
    j["value"] = complex_json(r.value);
    if (r.oracle_value) j["oracle"] = complex_json(*r.oracle_value);
    if (r.deviation) j["deviation"] = *r.deviation;
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string overall_status(const std::vector<ResultRecord>& records) {
  for (const ResultRecord& r : records)
    if (r.status == "FAIL") return "FAIL";
  return "OK";
}

int finish_command(std::ostream& out, const std::string& cmd,
                   const RunConfig& cfg, const ModelParams& params,
                   const std::vector<ResultRecord>& records, Json extra) {
  const std::string status = overall_status(records);
  const std::string digest = input_digest(cmd, cfg, params);
  if (cfg.json_output) {
    Json j;
    j["command"] = cmd;
    j["digest"] = digest;
    j.update(params_json(params));
    for (auto& [k, v] : extra.items()) j[k] = v;
    j["records"] = records_json(records);
    j["status"] = status;
    out << j.dump(2) << "\n";
  } else {
    out << "command: " << cmd << "\n";
    out << "digest: " << digest << "\n";
    print_params_human(out, params);
    for (auto& [k, v] : extra.items())
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
          << "\n";
    print_records_human(out, records);
    out << "status: " << status << "\n";
  }
  return status == "FAIL" ? 1 : 0;
}

int resolve_n(const RunConfig& cfg) {
  if (!cfg.x.empty()) return static_cast<int>(cfg.x.size());
  if (cfg.n < 1) throw ValidationError("--n must be at least 1");
  return cfg.n;
}

// ---- commands -------------------------------------------------------------

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  const ModelParams params = resolve_params(cfg, n);
  std::vector<ResultRecord> records;
  ResultRecord rec;
  rec.name = "Z";
  rec.value = izergin_partition(params);
  if (cfg.oracle) {
    try {
      const Complex zo =
          brute_partition(domain_wall(n), params, nullptr, cfg.enumeration_cap);
      rec.oracle_value = zo;
      rec.deviation = cdev(rec.value, zo);
      rec.status = *rec.deviation <= cfg.tolerance ? "OK" : "FAIL";
    } catch (const CapExceeded&) {
      rec.status = "SKIPPED";
    }
  }
  records.push_back(std::move(rec));
  return finish_command(out, "partition", cfg, params, records, Json::object());
}

int cmd_onepoint(const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  if (!cfg.all_rows && cfg.r < 1)
    throw ValidationError("onepoint needs --r R or --all");
  const ModelParams params = resolve_params(cfg, n);

  std::vector<int> rows;
  if (cfg.all_rows)
    for (int r = 1; r <= n; ++r) rows.push_back(r);
  else
    rows.push_back(cfg.r);

  bool oracle_ok = cfg.oracle;
  Complex z_brute{0.0, 0.0};
  if (cfg.oracle) {
    try {
      z_brute = brute_partition(domain_wall(n), params, nullptr, cfg.enumeration_cap);
    } catch (const CapExceeded&) {
      oracle_ok = false;
    }
  }

  std::vector<ResultRecord> records;
  Complex sum{0.0, 0.0};
  for (int r : rows) {
    ResultRecord rec;
    rec.name = "H[" + std::to_string(r) + "]";
    rec.value = bpz_onepoint(r, params);
    sum += rec.value;
    if (cfg.oracle) {
      if (oracle_ok) {
        const VertexPredicate filter{{r, 1, WeightClass::C}};
        const Complex num =
            brute_partition(domain_wall(n), params, &filter, cfg.enumeration_cap);
        rec.oracle_value = num / z_brute;
        rec.deviation = cdev(rec.value, *rec.oracle_value);
        rec.status = *rec.deviation <= cfg.tolerance ? "OK" : "FAIL";
      } else {
        rec.status = "SKIPPED";
      }
    }
    records.push_back(std::move(rec));
  }
  if (cfg.all_rows) {
    ResultRecord rec;
    rec.name = "sum";
    rec.value = sum;
    rec.oracle_value = Complex{1.0, 0.0};
    rec.deviation = cdev(sum, Complex{1.0, 0.0});
    rec.status = *rec.deviation <= cfg.tolerance ? "OK" : "FAIL";
    records.push_back(std::move(rec));
  }
  return finish_command(out, "onepoint", cfg, params, records, Json::object());
}

int cmd_twopoint(const RunConfig& cfg, std::ostream& out) {
  const int n = resolve_n(cfg);
  TwoPointSpec spec;
  spec.case_id = cfg.case_id;
  spec.n = n;
  switch (cfg.case_id) {
    case 1:
    case 3:
      if (cfg.r < 1 || cfg.r2 < 1)
        throw ValidationError("this case needs --r and --r2");
      spec.r1 = cfg.r;
      spec.r2 = cfg.r2;
      break;
    case 2:
      if (cfg.r < 1 || cfg.col < 1)
        throw ValidationError("case 2 needs --r and --col");
      spec.r1 = cfg.r;
      spec.col = cfg.col;
      break;
    case 4:
      if (cfg.r < 1) throw ValidationError("case 4 needs --r");
      spec.r1 = cfg.r;
      break;
    default:
      throw ValidationError("--case must be 1, 2, 3 or 4");
  }
  const ModelParams params = resolve_params(cfg, n);
  std::vector<ResultRecord> records;
  ResultRecord rec;
  rec.name = "F";
  rec.value = twopoint(spec, params, Backend::Formula, cfg.enumeration_cap);
  if (cfg.oracle) {
    try {
      const Complex fo =
          twopoint(spec, params, Backend::Oracle, cfg.enumeration_cap);
      rec.oracle_value = fo;
      rec.deviation = cdev(rec.value, fo);
      rec.status = *rec.deviation <= cfg.tolerance ? "OK" : "FAIL";
    } catch (const CapExceeded&) {
      rec.status = "SKIPPED";
    }
  }
  records.push_back(std::move(rec));
  Json extra;
  extra["case"] = spec.case_id;
  return finish_command(out, "twopoint", cfg, params, records, extra);
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1) throw ValidationError("--n must be at least 1");
  std::string status = "OK";
  std::int64_t count = -1;
  std::string note;
  try {
    count = count_configurations(domain_wall(cfg.n), cfg.enumeration_cap);
  } catch (const CapExceeded& e) {
    status = "SKIPPED";
    note = e.what();
  }
  if (cfg.json_output) {
    Json j;
    j["command"] = "count";
    j["n"] = cfg.n;
    if (status == "OK") j["count"] = count;
    if (!note.empty()) j["note"] = note;
    j["status"] = status;
    out << j.dump(2) << "\n";
  } else {
    out << "command: count\nn: " << cfg.n << "\n";
    if (status == "OK") out << "configurations = " << count << "\n";
    if (!note.empty()) out << "note: " << note << "\n";
    out << "status: " << status << "\n";
  }
  return 0;
}

int cmd_ybe_check(const RunConfig& cfg, std::ostream& out) {
  if (cfg.trials < 1) throw ValidationError("--trials must be at least 1");
  ParamSampler s(mix_seed(cfg.seed, 0x59BE));
  double max_matrix = 0.0, max_scalar = 0.0;
  for (long t = 0; t < cfg.trials; ++t) {
    const Complex x{s.uniform(-1.0, 1.0), 0.0};
    const Complex y{s.uniform(-1.0, 1.0), 0.0};
    const Complex z{s.uniform(-1.0, 1.0), 0.0};
    ModelParams p;
    p.lambda = cfg.lambda ? *cfg.lambda : s.lambda();
    max_matrix = std::max(max_matrix, ybe_residual(x, y, z, p));
    max_scalar = std::max(max_scalar, ybe_scalar_residual(x, y, z, p));
  }
  const bool pass = max_matrix <= cfg.tolerance && max_scalar <= cfg.tolerance;
  if (cfg.json_output) {
    Json j;
    j["command"] = "ybe-check";
    j["trials"] = cfg.trials;
    j["max_matrix_residual"] = max_matrix;
    j["max_scalar_residual"] = max_scalar;
    j["tolerance"] = cfg.tolerance;
    j["status"] = pass ? "OK" : "FAIL";
    out << j.dump(2) << "\n";
  } else {
    out << "command: ybe-check\ntrials: " << cfg.trials << "\n";
    out << "max_matrix_residual = " << format_sci(max_matrix) << "\n";
    out << "max_scalar_residual = " << format_sci(max_scalar) << "\n";
    out << "tolerance: " << format_double(cfg.tolerance) << "\n";
    out << "status: " << (pass ? "OK" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

// ---- public helpers ---------------------------------------------------------

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_complex(const Complex& z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::string s = format_double(re);
  s += std::signbit(im) ? '-' : '+';
  s += format_double(std::abs(im));
  s += 'i';
  return s;
}

std::string input_digest(const std::string& cmd, const RunConfig& cfg,
                         const ModelParams& params) {
  std::ostringstream s;
  char buf[64];
  const auto put = [&](double d) {
    std::snprintf(buf, sizeof buf, "%.17g", d);
    s << buf << ',';
  };
  s << cmd << '|';
  put(params.lambda.real());
  put(params.lambda.imag());
  s << "x:";
  for (const Complex& z : params.x) {
    put(z.real());
    put(z.imag());
  }
  s << "y:";
  for (const Complex& z : params.y) {
    put(z.real());
    put(z.imag());
  }
  s << "case=" << cfg.case_id << ";r=" << cfg.r << ";r2=" << cfg.r2
    << ";col=" << cfg.col << ";all=" << (cfg.all_rows ? 1 : 0)
    << ";trials=" << cfg.trials;
  const std::string bytes = s.str();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config root must be an object");

  const auto as_complex = [](const Json& v) -> Complex {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    throw ValidationError("complex values must be a number or [re, im]");
  };
  const auto as_complex_list = [&](const Json& v) {
    if (!v.is_array())
      throw ValidationError("rapidity lists must be arrays");
    std::vector<Complex> out;
    for (const Json& e : v) out.push_back(as_complex(e));
    return out;
  };

  RunConfig cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "lambda") {
      cfg.lambda = as_complex(val);
    } else if (key == "x") {
      cfg.x = as_complex_list(val);
    } else if (key == "y") {
      cfg.y = as_complex_list(val);
    } else if (key == "seed") {
      if (!val.is_number_unsigned())
        throw ValidationError("seed must be a non-negative integer");
      cfg.seed = val.get<std::uint64_t>();
    } else if (key == "n") {
      if (!val.is_number_integer() || val.get<int>() < 1)
        throw ValidationError("n must be a positive integer");
      cfg.n = val.get<int>();
    } else if (key == "tolerance") {
      if (!val.is_number() || val.get<double>() <= 0.0)
        throw ValidationError("tolerance must be a positive number");
      cfg.tolerance = val.get<double>();
    } else if (key == "enumeration_cap") {
      if (!val.is_number_integer() || val.get<int>() < 1)
        throw ValidationError("enumeration_cap must be a positive integer");
      cfg.enumeration_cap = val.get<int>();
    } else if (key == "trials") {
      if (!val.is_number_integer() || val.get<long>() < 1)
        throw ValidationError("trials must be a positive integer");
      cfg.trials = val.get<long>();
    } else {
      throw ValidationError("unknown config key: " + key);
    }
  }
  return cfg;
}

ModelParams resolve_params(const RunConfig& cfg, int n) {
  ParamSampler s(cfg.seed);
  ModelParams p;
  if (!cfg.x.empty()) {
    if (static_cast<int>(cfg.x.size()) != n) {
      std::ostringstream msg;
      msg << "x has " << cfg.x.size() << " entries, expected " << n;
      throw ValidationError(msg.str());
    }
    p.x = cfg.x;
  } else {
    p.x = s.rapidities(n);
  }
  if (!cfg.y.empty()) {
    if (static_cast<int>(cfg.y.size()) != n) {
      std::ostringstream msg;
      msg << "y has " << cfg.y.size() << " entries, expected " << n;
      throw ValidationError(msg.str());
    }
    p.y = cfg.y;
  } else {
    p.y = s.rapidities(n);
  }
  p.lambda = cfg.lambda ? *cfg.lambda : s.lambda();
  return p;
}

// ---- verify -----------------------------------------------------------------

namespace {

struct Criterion {
  std::string id, name, status, details;
};

}  // namespace

VerifySummary verify_suite(const RunConfig& cfg, std::ostream& out,
                           std::ostream& err) {
  const std::uint64_t seed = cfg.seed;
  const int cap = cfg.enumeration_cap;
  std::vector<Criterion> results;

  const auto run =
      [&](const char* id, const char* name,
          const std::function<std::pair<bool, std::string>()>& fn) {
        const auto t0 = Clock::now();
        Criterion c{id, name, "PASS", ""};
        try {
          const auto [ok, details] = fn();
          c.status = ok ? "PASS" : "FAIL";
          c.details = details;
        } catch (const CapExceeded& e) {
          c.status = "SKIP";
          c.details = e.what();
        } catch (const std::exception& e) {
          c.status = "FAIL";
          c.details = e.what();
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "# %s %.3f s\n", id,
                      seconds_since(t0));
        err << buf;
        results.push_back(std::move(c));
      };

  // C1: determinant evaluation against exhaustive enumeration, N = 1..6.
  run("C1", "determinant-vs-oracle", [&]() -> std::pair<bool, std::string> {
    constexpr double tol = 1e-9;
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        const ModelParams p = draw_params(mix_seed(seed, 1, n, trial), n);
        const Complex zd = izergin_partition(p);
        const Complex zo = brute_partition(domain_wall(n), p, nullptr, cap);
        worst = std::max(worst, cdev(zd, zo));
      }
    return {worst <= tol, "max_dev=" + format_sci(worst)};
  });

  // C2: configuration counts of the n x n domain-wall lattice.
  run("C2", "configuration-counts", [&]() -> std::pair<bool, std::string> {
    const std::int64_t expected[6] = {1, 2, 7, 42, 429, 7436};
    for (int n = 1; n <= 6; ++n) {
      const std::int64_t got = count_configurations(domain_wall(n), cap);
      if (got != expected[n - 1]) {
        std::ostringstream msg;
        msg << "n=" << n << " got " << got << " expected " << expected[n - 1];
        return {false, msg.str()};
      }
    }
    return {true, "counts=1,2,7,42,429,7436"};
  });

  // C3: Yang-Baxter residuals, matrix and scalar forms.
  run("C3", "yang-baxter", [&]() -> std::pair<bool, std::string> {
    constexpr double tol = 1e-12;
    ParamSampler s(mix_seed(seed, 3));
    double max_matrix = 0.0, max_scalar = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Complex x{s.uniform(-1.0, 1.0), 0.0};
      const Complex y{s.uniform(-1.0, 1.0), 0.0};
      const Complex z{s.uniform(-1.0, 1.0), 0.0};
      ModelParams p;
      p.lambda = Complex{s.uniform(0.3, 1.5), 0.0};
      max_matrix = std::max(max_matrix, ybe_residual(x, y, z, p));
      max_scalar = std::max(max_scalar, ybe_scalar_residual(x, y, z, p));
    }
    return {max_matrix <= tol && max_scalar <= tol,
            "max_matrix=" + format_sci(max_matrix) +
                " max_scalar=" + format_sci(max_scalar)};
  });

  // C4: boundary one-point function against the filtered-enumeration
  // ratio, every row, N = 2..5; the values also sum to 1.
  run("C4", "onepoint-vs-oracle", [&]() -> std::pair<bool, std::string> {
    constexpr double tol = 1e-8, sum_tol = 1e-10;
    double worst = 0.0, worst_sum = 0.0;
    for (int n = 2; n <= 5; ++n)
      for (int trial = 0; trial < 3; ++trial) {
        const ModelParams p = draw_params(mix_seed(seed, 4, n, trial), n);
        const Complex zb = brute_partition(domain_wall(n), p, nullptr, cap);
        Complex sum{0.0, 0.0};
        for (int r = 1; r <= n; ++r) {
          const Complex h = bpz_onepoint(r, p);
          sum += h;
          const VertexPredicate filter{{r, 1, WeightClass::C}};
          const Complex ho =
              brute_partition(domain_wall(n), p, &filter, cap) / zb;
          worst = std::max(worst, cdev(h, ho));
        }
        worst_sum = std::max(worst_sum, cdev(sum, Complex{1.0, 0.0}));
      }
    return {worst <= tol && worst_sum <= sum_tol,
            "max_dev=" + format_sci(worst) +
                " max_sum_dev=" + format_sci(worst_sum)};
  });

  // C5: one-step roll identity (all objects enumerated) plus the
  // three-index coefficient identity behind it.
  run("C5", "roll-identity", [&]() -> std::pair<bool, std::string> {
    constexpr double tol_step = 1e-10, tol_coef = 1e-12;
    double worst_step = 0.0;
    for (int n = 3; n <= 5; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        const ModelParams p = draw_params(mix_seed(seed, 5, n, trial), n);
        for (int i = 2; i <= n; ++i)
          worst_step = std::max(worst_step, roll_step_check(i, p, cap));
      }
    ParamSampler s(mix_seed(seed, 5, 99));
    double worst_coef = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Complex w{s.uniform(0.05, 0.95), 0.0};
      const Complex u{s.uniform(0.05, 0.95), 0.0};
      const Complex v{s.uniform(0.05, 0.95), 0.0};
      const Complex lam{s.uniform(0.3, 1.5), 0.0};
      const Complex lhs = ratio_g(w, v, lam) * ratio_f(v, u, lam) +
                          ratio_g(w, u, lam) * ratio_g(u, v, lam);
      const Complex rhs = ratio_g(w, v, lam) * ratio_f(w, u, lam);
      worst_coef = std::max(worst_coef, cdev(lhs, rhs));
    }
    return {worst_step <= tol_step && worst_coef <= tol_coef,
            "max_step=" + format_sci(worst_step) +
                " max_coef=" + format_sci(worst_coef)};
  });

  // C6: same-boundary two-point function against enumeration, all r1 < r2.
  run("C6", "twopoint-case1-vs-oracle", [&]() -> std::pair<bool, std::string> {
    constexpr double tol = 1e-8;
    double worst = 0.0;
    for (int n = 4; n <= 5; ++n)
      for (int trial = 0; trial < 2; ++trial) {
        const ModelParams p = draw_params(mix_seed(seed, 6, n, trial), n);
        for (int r1 = 1; r1 <= n; ++r1)
          for (int r2 = r1 + 1; r2 <= n; ++r2) {
            const Complex f = twopoint_case1(r1, r2, p, Backend::Formula, cap);
            const Complex fo = twopoint_case1(r1, r2, p, Backend::Oracle, cap);
            worst = std::max(worst, cdev(f, fo));
          }
      }
    return {worst <= tol, "max_dev=" + format_sci(worst)};
  });

  // C7: adjacent-boundary (case 2) and opposite-boundary (case 3)
  // two-point functions against enumeration, all admissible positions.
  run("C7", "twopoint-case2-case3-vs-oracle",
      [&]() -> std::pair<bool, std::string> {
        constexpr double tol = 1e-8;
        double worst2 = 0.0, worst3 = 0.0;
        for (int n = 3; n <= 4; ++n)
          for (int trial = 0; trial < 2; ++trial) {
            const ModelParams p = draw_params(mix_seed(seed, 7, n, trial), n);
            for (int r = 2; r <= n; ++r)
              for (int c = 2; c <= n; ++c) {
                const Complex f = twopoint_case2(r, c, p, Backend::Formula, cap);
                const Complex fo = twopoint_case2(r, c, p, Backend::Oracle, cap);
                worst2 = std::max(worst2, cdev(f, fo));
              }
            for (int r1 = 1; r1 <= n; ++r1)
              for (int r2 = 1; r2 <= n; ++r2) {
                if (r1 == r2) continue;
                const Complex f = twopoint_case3(r1, r2, p, Backend::Formula, cap);
                const Complex fo = twopoint_case3(r1, r2, p, Backend::Oracle, cap);
                worst3 = std::max(worst3, cdev(f, fo));
              }
          }
        return {worst2 <= tol && worst3 <= tol,
                "max_case2=" + format_sci(worst2) +
                    " max_case3=" + format_sci(worst3)};
      });

  // C8: same-row two-point function: the two-term recursion with every
  // object enumerated, the vanishing base, and the closed evaluation.
  run("C8", "twopoint-case4", [&]() -> std::pair<bool, std::string> {
    constexpr double tol_rec = 1e-10, tol_base = 1e-12, tol_closed = 1e-8;
    double worst_rec = 0.0, worst_base = 0.0, worst_closed = 0.0;
    for (int n = 3; n <= 4; ++n) {
      const ModelParams p = draw_params(mix_seed(seed, 8, n), n);
      const std::vector<Complex> ys(p.y.begin() + 2, p.y.end());
      const auto c4_brute = [&](int i, const std::vector<Complex>& rows) {
        const ModelParams q{p.lambda, rows, ys};
        return brute_partition(
            make_boundary(n, n - 2, {{Side::Right, i}, {Side::Left, i}}), q,
            nullptr, cap);
      };
      const auto c34_brute = [&](int il, int ir,
                                 const std::vector<Complex>& rows) {
        const ModelParams q{p.lambda, rows, ys};
        return brute_partition(
            make_boundary(n, n - 2, {{Side::Right, ir}, {Side::Left, il}}), q,
            nullptr, cap);
      };
      worst_base = std::max(worst_base, std::abs(c4_brute(1, p.x)));
      for (int i = 2; i <= n; ++i) {
        std::vector<Complex> sw = p.x;
        std::swap(sw[static_cast<std::size_t>(i) - 2],
                  sw[static_cast<std::size_t>(i) - 1]);
        const Complex u = p.x[static_cast<std::size_t>(i) - 2];
        const Complex v = p.x[static_cast<std::size_t>(i) - 1];
        const Complex lhs = c4_brute(i, p.x);
        const Complex rhs = c4_brute(i - 1, sw) +
                            ratio_g(v, u, p.lambda) * c34_brute(i, i - 1, p.x) +
                            ratio_g(u, v, p.lambda) * c34_brute(i, i - 1, sw);
        worst_rec = std::max(worst_rec, cdev(lhs, rhs));
        const Complex f = twopoint_case4(i, p, Backend::Formula, cap);
        const Complex fo = twopoint_case4(i, p, Backend::Oracle, cap);
        worst_closed = std::max(worst_closed, cdev(f, fo));
      }
    }
    return {worst_rec <= tol_rec && worst_base <= tol_base &&
                worst_closed <= tol_closed,
            "recursion=" + format_sci(worst_rec) +
                " base=" + format_sci(worst_base) +
                " closed=" + format_sci(worst_closed)};
  });

  // C9: the partition function sliced by the position of the rightmost
  // column's c-vertex: Z = sum_r rcw(r) * F_r^r with F enumerated.
  run("C9", "column-slicing", [&]() -> std::pair<bool, std::string> {
    constexpr double tol = 1e-9;
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n)
      for (int trial = 0; trial < 2; ++trial) {
        const ModelParams p = draw_params(mix_seed(seed, 9, n, trial), n);
        const Complex z = izergin_partition(p);
        Complex sum{0.0, 0.0};
        for (int r = 1; r <= n; ++r)
          sum += right_column_weight(r, p) *
                 brute_partition(onepoint_left_boundary(n, r),
                                 left_part_params(p), nullptr, cap);
        worst = std::max(worst, cdev(z, sum));
      }
    return {worst <= tol, "max_dev=" + format_sci(worst)};
  });

  VerifySummary summary;
  for (const Criterion& c : results) {
    if (c.status == "PASS")
      ++summary.passed;
    else if (c.status == "FAIL")
      ++summary.failed;
    else
      ++summary.skipped;
  }

  if (cfg.json_output) {
    Json j;
    j["command"] = "verify";
    j["seed"] = seed;
    Json arr = Json::array();
    for (const Criterion& c : results) {
      Json e;
      e["id"] = c.id;
      e["name"] = c.name;
      e["status"] = c.status;
      e["details"] = c.details;
      arr.push_back(std::move(e));
    }
    j["criteria"] = std::move(arr);
    j["passed"] = summary.passed;
    j["failed"] = summary.failed;
    j["skipped"] = summary.skipped;
    out << j.dump(2) << "\n";
  } else {
    for (const Criterion& c : results) {
      std::ostringstream line;
      line << std::left << std::setw(4) << c.id << std::setw(34) << c.name
           << std::setw(6) << c.status << c.details;
      std::string text = line.str();
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out << text << "\n";
    }
    out << "verify: " << summary.passed << " passed, " << summary.failed
        << " failed, " << summary.skipped << " skipped (seed " << seed
        << ")\n";
  }
  return summary;
}

int run_command(const std::string& cmd, const RunConfig& cfg,
                std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  int code = 0;
  try {
    if (cmd == "partition") {
      code = cmd_partition(cfg, out);
    } else if (cmd == "onepoint") {
      code = cmd_onepoint(cfg, out);
    } else if (cmd == "twopoint") {
      code = cmd_twopoint(cfg, out);
    } else if (cmd == "count") {
      code = cmd_count(cfg, out);
    } else if (cmd == "ybe-check") {
      code = cmd_ybe_check(cfg, out);
    } else if (cmd == "verify") {
      const VerifySummary s = verify_suite(cfg, out, err);
      code = s.failed > 0 ? 1 : 0;
    } else {
      err << "error: unknown command '" << cmd << "'\n";
      code = 2;
    }
  } catch (const DegenerateRapidities& e) {
    err << "error: " << e.what() << "\n";
    code = 3;
  } catch (const ZeroPartition& e) {
    err << "error: " << e.what() << "\n";
    code = 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    code = 2;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "# wall %.3f s\n", seconds_since(t0));
  err << buf;
  return code;
}

}  // namespace dwbc
