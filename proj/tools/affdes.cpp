// Batch front-end: build groups, enumerate orbit designs, verify design
// files, run sieves, and emit reports.
//
// Exit codes: 0 success / all eliminated, 1 usage error, 2 resource guard,
// 3 arithmetic survivors, 4 verification failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "affdes/design.hpp"
#include "affdes/orbit_designs.hpp"
#include "affdes/permgroup.hpp"
#include "affdes/sieve.hpp"

namespace {

using namespace affdes;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitSurvivor = 3;
constexpr int kExitVerifyFail = 4;

const char* kFamilyList =
    "families: AGL (d,p[,a]), AGammaL1 (v or v range), ASL (d,p[,a]), "
    "ASp (d,p[,a]), AG2 (a; arithmetic-only), Case5, Case6 ([p]), Case7, "
    "Case8 (arithmetic-only)";

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw UsageError("cannot open output file: " + path);
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

struct SieveArgs {
  std::string family;
  unsigned t = 0;
  std::uint32_t d = 0, p = 0, a = 1;
  std::uint64_t v = 0, v_min = 0, v_max = 0;
  unsigned threads = 0;
  bool detail = false;
  std::string format = "text";
  std::string out_path;
};

void print_scan_text(std::ostream& out,
                     const std::vector<sv::ScanVerdict>& verdicts) {
  for (const auto& verdict : verdicts) {
    out << pg::family_name(verdict.family.tag) << " v=" << verdict.v
        << " t=" << verdict.t << " : " << verdict.verdict();
    if (!verdict.surviving_k.empty()) {
      out << " (k =";
      for (auto k : verdict.surviving_k) out << " " << k;
      out << ")";
    } else if (verdict.checked == 0) {
      out << " (no admissible k)";
    } else {
      out << " (" << verdict.checked << " k values checked)";
    }
    out << "\n";
  }
}

int cmd_sieve(const SieveArgs& args) {
  pg::FamilyTag tag;
  try {
    tag = pg::family_from_name(args.family);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n" << kFamilyList << "\n";
    return kExitUsage;
  }

  sv::ScanOptions options;
  options.t = args.t;
  options.v_min = args.v_min;
  options.v_max = args.v_max;
  options.threads =
      args.threads ? args.threads
                   : std::max(1u, std::thread::hardware_concurrency());
  const bool big_range = args.v_max > 10000;
  options.full_detail = args.detail || !big_range;

  std::vector<pg::GroupFamily> instances;
  switch (tag) {
    case pg::FamilyTag::AGL:
    case pg::FamilyTag::ASL:
    case pg::FamilyTag::ASp:
      if (args.d == 0 || args.p == 0)
        throw UsageError("this family needs --d and --p");
      instances.push_back({tag, args.d, args.p, args.a});
      break;
    case pg::FamilyTag::AG2:
      instances.push_back({tag, 6 * args.a, 2, args.a});
      break;
    case pg::FamilyTag::AGammaL1:
      if (args.v > 0) {
        auto pp = sv::prime_power(args.v);
        if (!pp) throw UsageError("--v must be a prime power for AGammaL1");
        instances.push_back({tag, pp->second, pp->first, 1});
      } else if (args.v_max > 0) {
        instances.push_back({tag, 1, 2, 1});  // placeholder; range scan
      } else {
        throw UsageError("AGammaL1 needs --v or --v-max");
      }
      break;
    default:
      for (const auto& inst : sv::case_instances(tag))
        if (args.p == 0 || inst.p == args.p) instances.push_back(inst);
      if (instances.empty())
        throw UsageError("no instance of " + args.family + " with p=" +
                         std::to_string(args.p));
      break;
  }

  std::vector<sv::ScanVerdict> verdicts;
  for (const auto& inst : instances) {
    auto part = sv::family_scan(inst, options);
    verdicts.insert(verdicts.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
  }

  OutputTarget target;
  target.open(args.out_path);
  if (args.format == "json")
    target.out() << sv::scan_json(verdicts).dump(2) << "\n";
  else if (args.format == "csv")
    sv::write_scan_csv(target.out(), verdicts);
  else
    print_scan_text(target.out(), verdicts);

  const bool survivors =
      std::any_of(verdicts.begin(), verdicts.end(),
                  [](const auto& v) { return !v.eliminated; });
  return survivors ? kExitSurvivor : kExitOk;
}

struct OrbitArgs {
  std::string family;
  std::uint32_t d = 0, p = 0, a = 1;
  std::string k_spec;
  unsigned s_max = 0;
  bool alltop = false;
  unsigned steiner_t = 0;
  long export_orbit = -1;
  std::string export_path;
  std::string format = "json";
  std::string out_path;
};

std::pair<unsigned, unsigned> parse_k_range(const std::string& spec) {
  auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      unsigned k = static_cast<unsigned>(std::stoul(spec));
      return {k, k};
    }
    unsigned lo = static_cast<unsigned>(std::stoul(spec.substr(0, dots)));
    unsigned hi = static_cast<unsigned>(std::stoul(spec.substr(dots + 2)));
    if (lo > hi || lo == 0) throw UsageError("bad --k range: " + spec);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("bad --k value: " + spec);
  }
}

int cmd_orbits(const OrbitArgs& args) {
  pg::FamilyTag tag = pg::family_from_name(args.family);
  if (args.d == 0 || args.p == 0)
    throw UsageError("orbits needs --d and --p");
  pg::GroupFamily fam{tag, args.d, args.p, args.a};
  pg::FiniteGroup group = pg::build_family(fam);
  auto [k_lo, k_hi] = parse_k_range(args.k_spec);

  OutputTarget target;
  target.open(args.out_path);

  if (args.alltop) {
    auto report = od::alltop_scan(group, k_lo, k_hi);
    if (args.format == "json") {
      nlohmann::json j;
      j["group"] = fam.describe();
      j["implication_holds"] = report.implication_holds();
      j["rows"] = nlohmann::json::array();
      for (const auto& row : report.rows) {
        j["rows"].push_back({{"k", row.k},
                             {"representative", row.representative},
                             {"orbit_size", row.orbit_size},
                             {"is_4_design", row.is_4_design},
                             {"is_5_design", row.is_5_design}});
      }
      target.out() << j.dump(2) << "\n";
    } else {
      for (const auto& row : report.rows)
        target.out() << "k=" << row.k << " size=" << row.orbit_size
                     << " 4-design=" << (row.is_4_design ? "yes" : "no")
                     << " 5-design=" << (row.is_5_design ? "yes" : "no")
                     << "\n";
      target.out() << (report.implication_holds()
                           ? "4=>5 implication holds on every orbit\n"
                           : "4=>5 IMPLICATION VIOLATED\n");
    }
    return report.implication_holds() ? kExitOk : kExitVerifyFail;
  }

  for (unsigned k = k_lo; k <= k_hi; ++k) {
    std::vector<od::OrbitDesign> orbits;
    if (args.steiner_t > 0) {
      orbits = od::steiner_orbit_search(group, args.steiner_t, k);
    } else {
      orbits = od::enumerate_orbits(group, k);
      unsigned s_max = args.s_max ? args.s_max : std::min(5u, k);
      for (auto& orbit : orbits) od::design_strength(orbit, s_max);
    }
    if (args.format == "json") {
      target.out() << od::orbit_report_json(group.degree(), k, fam.describe(),
                                            orbits)
                          .dump(2)
                   << "\n";
    } else {
      target.out() << fam.describe() << " k=" << k << ": " << orbits.size()
                   << " orbit(s)\n";
      for (const auto& orbit : orbits) {
        target.out() << "  size=" << orbit.size << " rep=";
        for (auto x : orbit.representative) target.out() << x << " ";
        for (const auto& e : orbit.strength) {
          if (e.uniform)
            target.out() << " s=" << e.s << ":lambda=" << e.lambda;
          else
            target.out() << " s=" << e.s << ":" << e.min_count << ".."
                         << e.max_count;
        }
        target.out() << "\n";
      }
    }
    if (args.export_orbit >= 0 && k == k_lo) {
      if (static_cast<std::size_t>(args.export_orbit) >= orbits.size())
        throw UsageError("--export-orbit index out of range");
      const auto& orbit = orbits[static_cast<std::size_t>(args.export_orbit)];
      dc::DesignFile file;
      file.design = orbit.as_design();
      file.t = 1;
      file.lambda = 1;
      for (const auto& e : orbit.strength) {
        if (e.uniform) {
          file.t = e.s;
          file.lambda = e.lambda;
        }
      }
      std::ofstream out(args.export_path);
      if (!out) throw UsageError("cannot open " + args.export_path);
      dc::write_design_text(out, file);
    }
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string design_path;
  std::string group_path;
};

int cmd_verify(const VerifyArgs& args) {
  std::ifstream in(args.design_path);
  if (!in) throw UsageError("cannot open design file: " + args.design_path);
  dc::DesignFile file = args.design_path.ends_with(".json")
                            ? dc::read_design_json(in)
                            : dc::read_design_text(in);
  const dc::Design& design = file.design;
  auto params =
      dc::DesignParams::make(file.t, design.v, design.k, file.lambda);

  bool all_ok = true;
  auto row = [&](const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
    if (!ok) all_ok = false;
  };

  auto verify = dc::verify_design(design, file.t, file.lambda);
  {
    std::ostringstream note;
    if (!verify.ok) {
      note << "witness t-subset {";
      for (std::size_t i = 0; i < verify.witness.size(); ++i)
        note << (i ? " " : "") << verify.witness[i];
      note << "} covered " << verify.witness_count << " times, expected "
           << file.lambda;
    }
    row("coverage " + std::to_string(file.t) + "-design", verify.ok,
        note.str());
  }
  for (const auto& check : dc::check_identities(params))
    row("identity " + check.id, check.holds, "");
  for (const auto& div : dc::divisibility_conditions(params))
    row("divisibility s=" + std::to_string(div.s), div.passes, "");
  row("simple", design.simple, "");

  if (!args.group_path.empty()) {
    std::ifstream gin(args.group_path);
    if (!gin) throw UsageError("cannot open group file: " + args.group_path);
    pg::FiniteGroup group = pg::read_group(gin);
    bool block_trans = false;
    try {
      block_trans = dc::is_block_transitive(design, group);
    } catch (const DomainError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitVerifyFail;
    }
    row("block-transitive", block_trans, "");
    bool flag_trans = dc::is_flag_transitive(design, group);
    std::cout << "INFO flag-transitive: " << (flag_trans ? "yes" : "no")
              << "\n";
    if (block_trans && file.t >= 2) {
      auto hom = dc::homogeneity_implication_check(design, group, file.t);
      row("point " + std::to_string(hom.block_degree) + "-homogeneous",
          hom.block_holds, "");
      if (hom.flag_transitive)
        row("point " + std::to_string(hom.flag_degree) +
                "-homogeneous (flag)",
            hom.flag_holds, "");
    }
    if (block_trans) {
      // b |G_B| = v |G_x| = |G|
      Int b_gb = Int(design.blocks.size()) *
                 group.stabilizer_order_of_set(design.blocks.front());
      Int v_gx = Int(design.v) * group.stabilizer_order_of_set(
                                     {design.blocks.front().front()});
      std::ostringstream note;
      note << "b|G_B|=" << b_gb << " v|G_x|=" << v_gx << " |G|="
           << group.order();
      row("order equation", b_gb == group.order() && v_gx == group.order(),
          note.str());
    }
  }
  return all_ok ? kExitOk : kExitVerifyFail;
}

struct BoundArgs {
  unsigned t = 0;
  std::uint64_t v = 0, v_min = 0, v_max = 0;
  std::string format = "text";
};

int cmd_bound(const BoundArgs& args) {
  std::uint64_t lo = args.v ? args.v : args.v_min;
  std::uint64_t hi = args.v ? args.v : args.v_max;
  if (lo == 0 || hi < lo) throw UsageError("bound needs --v or a v range");
  if (args.t != 4 && args.t != 5) throw UsageError("bound: t must be 4 or 5");
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t v = lo; v <= hi; ++v) {
    if (Int(4) * v - 11 - 4 * (args.t - 4) < 0) {
      if (args.format != "json")
        std::cout << "t=" << args.t << " v=" << v << " k_max undefined\n";
      else
        rows.push_back({{"v", v}, {"k_max", nullptr}});
      continue;
    }
    std::uint64_t km = dc::k_max(args.t, v);
    bool equality = false;
    if (km > args.t && km < v) {
      auto params = dc::DesignParams::make(args.t, v, km, 1);
      equality = dc::cameron_bounds(params).b_equality;
    }
    if (args.format == "json") {
      rows.push_back({{"v", v}, {"k_max", km}, {"equality", equality}});
    } else {
      std::cout << "t=" << args.t << " v=" << v << " k_max=" << km;
      if (equality)
        std::cout << "  [equality (" << args.t << "," << km << "," << v
                  << ")]";
      std::cout << "\n";
    }
  }
  if (args.format == "json")
    std::cout << nlohmann::json{{"t", args.t}, {"rows", rows}}.dump(2)
              << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-transitive design engine: orbit constructions and the "
               "arithmetic non-existence sieve for affine groups"};
  app.require_subcommand(1);

  SieveArgs sieve_args;
  auto* sieve = app.add_subcommand(
      "sieve", "Run elimination rules over a group family");
  sieve->add_option("--family", sieve_args.family, kFamilyList)->required();
  sieve->add_option("--t", sieve_args.t, "design strength (4 or 5)")
      ->required();
  sieve->add_option("--d", sieve_args.d, "dimension over GF(p)");
  sieve->add_option("--p", sieve_args.p, "characteristic");
  sieve->add_option("--a", sieve_args.a, "field extension degree");
  sieve->add_option("--v", sieve_args.v, "single point count (AGammaL1)");
  sieve->add_option("--v-min", sieve_args.v_min, "range scan lower bound");
  sieve->add_option("--v-max", sieve_args.v_max, "range scan upper bound");
  sieve->add_option("--threads", sieve_args.threads,
                    "worker threads (default: hardware)");
  sieve->add_flag("--detail", sieve_args.detail,
                  "full per-rule detail even for large scans");
  sieve->add_option("--format", sieve_args.format, "text|json|csv");
  sieve->add_option("--out", sieve_args.out_path, "output file");

  OrbitArgs orbit_args;
  auto* orbits = app.add_subcommand(
      "orbits", "Enumerate orbits on k-subsets and measure design strength");
  orbits->add_option("--family", orbit_args.family, "buildable family")
      ->required();
  orbits->add_option("--d", orbit_args.d, "dimension over GF(p)")->required();
  orbits->add_option("--p", orbit_args.p, "characteristic")->required();
  orbits->add_option("--a", orbit_args.a, "field extension degree");
  orbits->add_option("--k", orbit_args.k_spec, "block size, N or N..M")
      ->required();
  orbits->add_option("--s-max", orbit_args.s_max, "strength depth");
  orbits->add_flag("--alltop", orbit_args.alltop,
                   "check the 4-design => 5-design implication");
  orbits->add_option("--steiner-t", orbit_args.steiner_t,
                     "report only orbits that are Steiner t-designs");
  orbits->add_option("--export-orbit", orbit_args.export_orbit,
                     "orbit index to export as a design file");
  orbits->add_option("--export-to", orbit_args.export_path,
                     "design file path for --export-orbit");
  orbits->add_option("--format", orbit_args.format, "json|text");
  orbits->add_option("--out", orbit_args.out_path, "output file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Verify a design file, optionally against a group file");
  verify->add_option("--design", verify_args.design_path, "design file")
      ->required();
  verify->add_option("--group", verify_args.group_path,
                     "group generators file");

  BoundArgs bound_args;
  auto* bound =
      app.add_subcommand("bound", "Block-size bound for Steiner t-designs");
  bound->add_option("--t", bound_args.t, "4 or 5")->required();
  bound->add_option("--v", bound_args.v, "point count");
  bound->add_option("--v-min", bound_args.v_min, "table lower bound");
  bound->add_option("--v-max", bound_args.v_max, "table upper bound");
  bound->add_option("--format", bound_args.format, "text|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Map every command-line parse failure onto the usage exit code;
    // --help and --version still exit 0.
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sieve->parsed()) return cmd_sieve(sieve_args);
    if (orbits->parsed()) return cmd_orbits(orbit_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (bound->parsed()) return cmd_bound(bound_args);
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
