// eqmf - exact computation and rigorous positivity verification for extremal
// quasimodular forms of depth <= 4 at level one.
//
// Exit codes (stable contract for CI): 0 success / all verified, 1 positivity
// violation found, 2 usage or execution error, 3 inconclusive.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqmf/decompose.hpp"
#include "eqmf/extremal.hpp"
#include "eqmf/positivity.hpp"

namespace {

using nlohmann::ordered_json;

struct Range {
  long lo = 0;
  long hi = 0;
};

Range parse_range(const std::string& s) {
  auto dots = s.find("..");
  Range r;
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stol(s);
    } else {
      r.lo = std::stol(s.substr(0, dots));
      r.hi = std::stol(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected 'A' or 'A..B', got '" + s + "'");
  }
  if (r.lo > r.hi) throw CLI::ValidationError("range", "empty range '" + s + "'");
  return r;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

std::string coefficient_table(const eqmf::QSeries& q, const std::string& format,
                              ordered_json header) {
  std::ostringstream os;
  if (format == "json") {
    ordered_json j = std::move(header);
    ordered_json coeffs = ordered_json::array();
    for (long n = 0; n < q.prec(); ++n) coeffs.push_back(eqmf::to_string(q[n]));
    j["coefficients"] = std::move(coeffs);
    os << j.dump() << "\n";
  } else if (format == "csv") {
    os << "n,coefficient\n";
    for (long n = 0; n < q.prec(); ++n) os << n << "," << eqmf::to_string(q[n]) << "\n";
  } else {
    for (long n = 0; n < q.prec(); ++n) os << n << " " << eqmf::to_string(q[n]) << "\n";
  }
  return os.str();
}

eqmf::QSeries expand_named_form(const std::string& name, long prec) {
  if (name == "E2") return eqmf::eisenstein(2, prec).series;
  if (name == "E4") return eqmf::eisenstein(4, prec).series;
  if (name == "E6") return eqmf::eisenstein(6, prec).series;
  if (name == "delta") return eqmf::delta(prec).series;
  if (name.rfind("f:", 0) == 0) {
    auto second = name.find(':', 2);
    if (second != std::string::npos) {
      long w = std::stol(name.substr(2, second - 2));
      int k = std::stoi(name.substr(second + 1));
      return eqmf::f_basis(w, k, prec).q_expansion();
    }
  }
  throw CLI::ValidationError("form", "unknown form '" + name + "' (want E2|E4|E6|delta|f:w:k)");
}

ordered_json constants_json(const std::vector<eqmf::UpperReal>& constants) {
  ordered_json arr = ordered_json::array();
  for (std::size_t l = 0; l < constants.size(); ++l) {
    ordered_json c;
    c["order"] = l;
    c["value"] = eqmf::decimal_upper(constants[l].value);
    c["direction"] = "upper";
    arr.push_back(std::move(c));
  }
  return arr;
}

std::vector<std::pair<long, int>> job_grid(Range wr, Range rr) {
  std::vector<std::pair<long, int>> jobs;
  for (long w = wr.lo; w <= wr.hi; ++w)
    for (long r = rr.lo; r <= rr.hi; ++r)
      if (r >= 1 && r <= 4 && eqmf::extremal_supported(w, static_cast<int>(r)))
        jobs.emplace_back(w, static_cast<int>(r));
  return jobs;
}

int cmd_verify(Range wr, Range rr, std::optional<long> prec_cap, unsigned jobs,
               const std::string& format, const std::string& out_path,
               const std::string& cache_dir) {
  auto grid = job_grid(wr, rr);
  if (grid.empty()) {
    std::cerr << "warning: no supported (weight, depth) pairs in the requested ranges\n";
    emit(format == "json" ? "{\"reports\":[],\"summary\":{\"verified\":0,\"violated\":0,"
                            "\"inconclusive\":0}}\n"
                          : "",
         out_path);
    return 0;
  }

  std::vector<eqmf::PositivityReport> reports(grid.size());
  std::vector<std::string> errors(grid.size());
  std::atomic<std::size_t> next{0};
  unsigned nthreads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      try {
        reports[i] = eqmf::verify_positivity(grid[i].first, grid[i].second, prec_cap, cache_dir);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!errors[i].empty()) {
      std::cerr << "error: verify (" << grid[i].first << ", " << grid[i].second
                << "): " << errors[i] << "\n";
      return 2;
    }

  long verified = 0, violated = 0, inconclusive = 0;
  for (const auto& rep : reports) {
    switch (rep.status) {
      case eqmf::PositivityReport::Status::verified: ++verified; break;
      case eqmf::PositivityReport::Status::violated: ++violated; break;
      default: ++inconclusive; break;
    }
  }

  std::ostringstream os;
  if (format == "json") {
    os << "{\"reports\":[";
    for (std::size_t i = 0; i < reports.size(); ++i)
      os << (i ? "," : "") << eqmf::report_to_json(reports[i]);
    os << "],\"summary\":{\"verified\":" << verified << ",\"violated\":" << violated
       << ",\"inconclusive\":" << inconclusive << "}}\n";
  } else {
    for (const auto& rep : reports) {
      os << "w=" << rep.weight << " r=" << rep.depth << " status=" << status_name(rep.status);
      if (rep.n0_found) os << " n0=" << rep.n0;
      os << " scanned_up_to=" << rep.scanned_up_to << " violations=" << rep.violations.size()
         << "\n";
    }
    os << "summary: verified=" << verified << " violated=" << violated
       << " inconclusive=" << inconclusive << " total=" << reports.size() << "\n";
  }
  emit(os.str(), out_path);

  if (violated > 0) return 1;
  if (inconclusive > 0) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact extremal quasimodular forms and rigorous positivity verification"};
  app.require_subcommand(1);

  std::string format = "plain";
  std::string out_path;
  std::string cache_dir;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--out", out_path, "write output to file instead of stdout");
  app.add_option("--cache-dir", cache_dir, "q-expansion disk cache directory")
      ->envname("EQMF_CACHE_DIR");

  // expand
  auto* expand = app.add_subcommand("expand", "print the q-expansion of a named form");
  std::string form_name;
  long expand_prec = 64;
  expand->add_option("form", form_name, "E2|E4|E6|delta|f:w:k")->required();
  expand->add_option("--prec", expand_prec, "number of coefficients")->check(CLI::PositiveNumber);

  // extremal
  auto* extremal_cmd = app.add_subcommand("extremal", "print the normalised extremal form g_w^(r)");
  long ew = 0;
  int er = 0;
  long extremal_prec = 64;
  extremal_cmd->add_option("w", ew, "weight")->required();
  extremal_cmd->add_option("r", er, "depth (1..4)")->required();
  extremal_cmd->add_option("--prec", extremal_prec, "number of coefficients")->check(CLI::PositiveNumber);

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "derivative-basis decomposition of g_w^(r)");
  long dw = 0;
  int dr = 0;
  long decompose_prec = 0;
  decompose_cmd->add_option("w", dw, "weight")->required();
  decompose_cmd->add_option("r", dr, "depth (1..4)")->required();
  decompose_cmd->add_option("--prec", decompose_prec, "number of coefficients");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Jenkins-Rouse constants and threshold N0");
  long bw = 0;
  int br = 0;
  bound_cmd->add_option("w", bw, "weight")->required();
  bound_cmd->add_option("r", br, "depth (1..4)")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "batch positivity verification");
  std::string verify_w, verify_r = "1..4";
  long prec_cap = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  verify_cmd->add_option("--w", verify_w, "weight range A..B")->required();
  verify_cmd->add_option("--r", verify_r, "depth range A..B");
  verify_cmd->add_option("--prec-cap", prec_cap, "hard cap on expansion precision");
  verify_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  // dims
  auto* dims_cmd = app.add_subcommand("dims", "dimension table");
  std::string dims_w;
  dims_cmd->add_option("--w", dims_w, "weight range A..B")->required();

  // let --format/--out/--cache-dir appear after the subcommand as well
  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*expand) {
      auto q = expand_named_form(form_name, expand_prec);
      ordered_json hdr;
      hdr["form"] = form_name;
      hdr["prec"] = expand_prec;
      emit(coefficient_table(q, format, std::move(hdr)), out_path);
      return 0;
    }

    if (*extremal_cmd) {
      auto g = eqmf::normalise(eqmf::extremal(ew, er, extremal_prec));
      ordered_json hdr;
      hdr["weight"] = ew;
      hdr["depth"] = er;
      hdr["prec"] = extremal_prec;
      hdr["normalised"] = true;
      emit(coefficient_table(g.q_expansion(), format, std::move(hdr)), out_path);
      return 0;
    }

    if (*decompose_cmd) {
      long prec = decompose_prec > 0 ? decompose_prec
                                     : eqmf::dim_quasimodular(dw, dr) + dr + 8;
      auto d = eqmf::decompose_extremal(dw, dr, prec);
      std::ostringstream os;
      if (format == "json") {
        ordered_json j;
        j["weight"] = d.weight;
        j["depth"] = d.depth;
        j["prec"] = prec;
        ordered_json entries = ordered_json::array();
        for (int l = 0; l <= d.depth; ++l) {
          ordered_json e;
          e["order"] = l;
          e["eisenstein_weight"] = d.weight - 2 * l;
          e["c"] = eqmf::to_string(d.eis_mult[static_cast<std::size_t>(l)]);
          ordered_json alpha = ordered_json::array();
          const auto& s = d.cusp[static_cast<std::size_t>(l)].series;
          for (long n = 0; n < s.prec(); ++n) alpha.push_back(eqmf::to_string(s[n]));
          e["alpha"] = std::move(alpha);
          entries.push_back(std::move(e));
        }
        j["entries"] = std::move(entries);
        os << j.dump() << "\n";
      } else {
        for (int l = 0; l <= d.depth; ++l) {
          const auto& s = d.cusp[static_cast<std::size_t>(l)].series;
          os << "l=" << l << " weight=" << d.weight - 2 * l
             << " c=" << eqmf::to_string(d.eis_mult[static_cast<std::size_t>(l)]) << " alpha=";
          for (long n = 0; n < s.prec(); ++n) os << (n ? "," : "") << eqmf::to_string(s[n]);
          os << "\n";
        }
      }
      emit(os.str(), out_path);
      return 0;
    }

    if (*bound_cmd) {
      if (!eqmf::extremal_supported(bw, br))
        throw CLI::ValidationError("bound", "unsupported (weight, depth)");
      auto rep = eqmf::verify_positivity(bw, br, std::nullopt, cache_dir);
      std::ostringstream os;
      if (format == "json") {
        ordered_json j;
        j["weight"] = bw;
        j["depth"] = br;
        if (rep.n0_found)
          j["n0"] = rep.n0;
        else
          j["n0"] = nullptr;
        j["constants"] = constants_json(rep.constants);
        os << j.dump() << "\n";
      } else {
        os << "w=" << bw << " r=" << br;
        if (rep.n0_found) os << " n0=" << rep.n0;
        for (std::size_t l = 0; l < rep.constants.size(); ++l)
          os << " C" << l << "=" << eqmf::decimal_upper(rep.constants[l].value, 8);
        os << "\n";
      }
      emit(os.str(), out_path);
      return 0;
    }

    if (*verify_cmd) {
      return cmd_verify(parse_range(verify_w), parse_range(verify_r),
                        prec_cap > 0 ? std::optional<long>(prec_cap) : std::nullopt, jobs, format,
                        out_path, cache_dir);
    }

    if (*dims_cmd) {
      Range r = parse_range(dims_w);
      std::ostringstream os;
      if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (long w = r.lo; w <= r.hi; ++w) {
          ordered_json row;
          row["w"] = w;
          row["dim_M"] = eqmf::dim_modular(w);
          row["dim_S"] = eqmf::dim_cusp(w);
          for (int d = 1; d <= 4; ++d)
            row["dim_QM" + std::to_string(d)] =
                (w >= 0 && w % 2 == 0) ? eqmf::dim_quasimodular(w, d) : 0;
          arr.push_back(std::move(row));
        }
        os << arr.dump() << "\n";
      } else {
        const char* sep = format == "csv" ? "," : " ";
        if (format == "csv") os << "w,dim_M,dim_S,dim_QM1,dim_QM2,dim_QM3,dim_QM4\n";
        for (long w = r.lo; w <= r.hi; ++w) {
          os << w << sep << eqmf::dim_modular(w) << sep << eqmf::dim_cusp(w);
          for (int d = 1; d <= 4; ++d)
            os << sep << ((w >= 0 && w % 2 == 0) ? eqmf::dim_quasimodular(w, d) : 0);
          os << "\n";
        }
      }
      emit(os.str(), out_path);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
