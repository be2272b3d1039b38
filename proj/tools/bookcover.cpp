// Command-line front end: validate books, export presentations, compute
// covers, homology, bounds, tower growth series, and the cyclic-cover
// monodromy sequence. JSON in, JSON out; tables are rendering only.
//
// Exit codes: 0 success, 1 validation failure or oracle disagreement,
// 2 cap exceeded, 3 malformed input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bookcover/bookcover.hpp"

namespace {

using bookcover::Caps;
using bookcover::Int;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitCap = 2;
constexpr int kExitMalformed = 3;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bookcover::MalformedInput("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw bookcover::MalformedInput(path + ": " + e.what());
  }
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw bookcover::MalformedInput("cannot write " + out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json json_int(const Int& v) { return bookcover::detail::json_int(v); }

struct CommonArgs {
  std::string book_path;
  std::string out_path;
  Caps caps;
};

bookcover::BookComplex load_book(const std::string& path) {
  return bookcover::book_from_json(load_json(path));
}

json h1_report(const bookcover::BookComplex& book, const bookcover::GroupPresentation& p,
               const bookcover::FiniteQuotient& q, const Caps& caps, bool oracle,
               bool* oracle_agree) {
  const bookcover::CoveredComplex cov = bookcover::lift(book, p, q, caps);
  const bookcover::CoverMatrix cm = bookcover::build_cover_matrix(cov);
  const bookcover::CoverHomology hom = bookcover::cover_homology(cov, cm);
  const bookcover::IndexDecomposition dec = bookcover::index_decomposition(cov);

  json out;
  out["betti"] = hom.betti_total;
  out["invariant_factors"] = json::array();
  for (const Int& f : hom.h.invariant_factors) out["invariant_factors"].push_back(json_int(f));
  out["torsion_order"] = hom.h.torsion_order.str();
  out["matrix_shape"] = {cm.matrix.rows, cm.matrix.cols};
  out["index"] = cov.total_degree;
  out["index_decomposition"] = {{"circle", dec.circle}, {"ell", dec.ell},
                                {"degree", dec.degree}};
  if (oracle) {
    const bookcover::HomologyResult rs = bookcover::rs_homology(p, q, caps);
    const bool agree = rs.torsion_order == hom.h.torsion_order &&
                       rs.invariant_factors == hom.h.invariant_factors &&
                       rs.betti == hom.betti_total;
    json oj;
    oj["agree"] = agree;
    oj["betti"] = rs.betti;
    oj["invariant_factors"] = json::array();
    for (const Int& f : rs.invariant_factors) oj["invariant_factors"].push_back(json_int(f));
    oj["torsion_order"] = rs.torsion_order.str();
    out["oracle"] = std::move(oj);
    if (oracle_agree != nullptr) *oracle_agree = agree;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homology torsion of finite regular covers of books of I-bundles"};
  app.require_subcommand(1);

  Caps caps;
  app.add_option("--max-group-order", caps.max_group_order,
                 "largest image group that will be enumerated")
      ->envname("BOOKCOVER_MAX_GROUP_ORDER")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-degree", caps.max_degree, "largest permutation degree accepted")
      ->envname("BOOKCOVER_MAX_DEGREE")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-minors-dim", caps.max_minors_dim,
                 "largest matrix fed to the gcd-of-minors cross-check")
      ->envname("BOOKCOVER_MAX_MINORS_DIM")
      ->check(CLI::PositiveNumber);

  std::string book_path, quotient_path, tower_path, out_path, format = "json";
  std::string matrix_text = "2,1,1,1";
  bool oracle = false;
  std::uint64_t prime = 2;
  std::uint32_t depth = 1, max_n = 30;

  auto* cmd_validate = app.add_subcommand("validate", "check a book against its invariants");
  cmd_validate->add_option("--book", book_path, "book JSON file")->required();
  cmd_validate->add_option("--out", out_path, "write the report here instead of stdout");

  auto* cmd_present = app.add_subcommand("present", "export the fundamental group presentation");
  cmd_present->add_option("--book", book_path)->required();
  cmd_present->add_option("--out", out_path);

  auto* cmd_cover = app.add_subcommand("cover", "lift the decomposition to the cover");
  cmd_cover->add_option("--book", book_path)->required();
  cmd_cover->add_option("--quotient", quotient_path, "quotient JSON file")->required();
  cmd_cover->add_option("--out", out_path);

  auto* cmd_h1 = app.add_subcommand("h1", "first homology of the cover");
  cmd_h1->add_option("--book", book_path)->required();
  cmd_h1->add_option("--quotient", quotient_path)->required();
  cmd_h1->add_flag("--oracle", oracle, "cross-check against the rewriting oracle");
  cmd_h1->add_option("--out", out_path);

  auto* cmd_bound = app.add_subcommand("bound", "torsion bound chain and matrix report");
  cmd_bound->add_option("--book", book_path)->required();
  cmd_bound->add_option("--quotient", quotient_path)->required();
  cmd_bound->add_option("--out", out_path);

  auto* cmd_tower = app.add_subcommand("tower", "tower computations");
  auto* cmd_tower_run = cmd_tower->add_subcommand("run", "growth series along a tower");
  cmd_tower_run->add_option("--book", book_path)->required();
  cmd_tower_run->add_option("--tower", tower_path, "tower JSON file")->required();
  cmd_tower_run->add_flag("--oracle", oracle);
  cmd_tower_run->add_option("--out", out_path);
  auto* cmd_tower_make =
      cmd_tower->add_subcommand("make", "write a mod-q^n homology tower file");
  cmd_tower_make->add_option("--book", book_path)->required();
  cmd_tower_make->add_option("--prime", prime, "modulus base q")->required();
  cmd_tower_make->add_option("--depth", depth, "deepest level n (level 0 is trivial)");
  cmd_tower_make->add_option("--out", out_path);

  auto* cmd_meta = app.add_subcommand("metabelian", "cyclic-cover torsion of a monodromy");
  cmd_meta->add_option("--matrix", matrix_text, "row-major 2x2 integer matrix \"a,b,c,d\"");
  cmd_meta->add_option("--max-n", max_n, "levels 1..N");
  cmd_meta->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_validate->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::ValidationReport report = bookcover::validate(book);
      json out;
      out["valid"] = report.empty();
      out["violations"] = json::array();
      for (const auto& issue : report)
        out["violations"].push_back({{"rule", issue.rule}, {"detail", issue.detail}});
      emit(dump(out), out_path);
      for (const auto& issue : report)
        std::cerr << "violation: " << issue.rule << ": " << issue.detail << "\n";
      return report.empty() ? kExitOk : kExitFailure;
    }

    if (cmd_present->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      emit(bookcover::export_text(bookcover::present(book)), out_path);
      return kExitOk;
    }

    if (cmd_cover->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::GroupPresentation p = bookcover::present(book);
      const bookcover::FiniteQuotient q =
          bookcover::quotient_from_json(p, load_json(quotient_path), caps);
      emit(dump(bookcover::cover_to_json(bookcover::lift(book, p, q, caps))), out_path);
      return kExitOk;
    }

    if (cmd_h1->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::GroupPresentation p = bookcover::present(book);
      const bookcover::FiniteQuotient q =
          bookcover::quotient_from_json(p, load_json(quotient_path), caps);
      bool agree = true;
      const json out = h1_report(book, p, q, caps, oracle, &agree);
      emit(dump(out), out_path);
      if (!agree) std::cerr << "oracle disagreement\n";
      return agree ? kExitOk : kExitFailure;
    }

    if (cmd_bound->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::GroupPresentation p = bookcover::present(book);
      const bookcover::FiniteQuotient q =
          bookcover::quotient_from_json(p, load_json(quotient_path), caps);
      const bookcover::CoveredComplex cov = bookcover::lift(book, p, q, caps);
      const bookcover::CoverMatrix cm = bookcover::build_cover_matrix(cov);
      json out = bookcover::matrix_report(cov, cm);
      json norms = json::array();
      for (const auto& r : bookcover::column_norm_check(cm))
        norms.push_back({{"circle_lift", r.circle_lift},
                         {"l1", json_int(r.l1)},
                         {"l2_squared", json_int(r.l2_squared)},
                         {"cap", json_int(r.cap)}});
      out["column_norms"] = std::move(norms);
      emit(dump(out), out_path);
      return kExitOk;
    }

    if (cmd_tower_run->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::GroupPresentation p = bookcover::present(book);
      const bookcover::TowerSpec tower =
          bookcover::tower_from_json(p, load_json(tower_path), caps);
      const std::vector<bookcover::GrowthRow> rows =
          bookcover::growth_series(book, p, tower, caps, oracle);
      json out = json::array();
      bool all_agree = true;
      std::cerr << "level  index  torsion  betti  ratio  bound_ratio\n";
      for (const bookcover::GrowthRow& row : rows) {
        json rj;
        rj["level"] = row.level;
        rj["index"] = row.index;
        rj["torsion_order"] = row.torsion_order.str();
        rj["invariant_factors"] = json::array();
        for (const Int& f : row.invariant_factors)
          rj["invariant_factors"].push_back(json_int(f));
        rj["betti"] = row.betti;
        rj["ratio"] = row.ratio;
        rj["hadamard_ratio"] = row.hadamard_ratio;
        rj["ell"] = row.ell;
        rj["D"] = row.degree_d;
        rj["bound_ok"] = row.bound_ok;
        if (row.oracle_checked) rj["oracle"] = row.oracle_agree ? "agree" : "disagree";
        all_agree = all_agree && row.oracle_agree;
        out.push_back(std::move(rj));
        std::cerr << row.level << "  " << row.index << "  " << row.torsion_order << "  "
                  << row.betti << "  " << format_double(row.ratio) << "  "
                  << format_double(row.hadamard_ratio) << "\n";
      }
      emit(dump(out), out_path);
      if (!all_agree) std::cerr << "oracle disagreement\n";
      return all_agree ? kExitOk : kExitFailure;
    }

    if (cmd_tower_make->parsed()) {
      const bookcover::BookComplex book = load_book(book_path);
      const bookcover::GroupPresentation p = bookcover::present(book);
      const bookcover::TowerSpec tower =
          bookcover::mod_prime_tower(book, p, prime, depth, caps);
      emit(dump(bookcover::tower_to_json(p, tower)), out_path);
      return kExitOk;
    }

    if (cmd_meta->parsed()) {
      bookcover::Mat2 a;
      {
        std::istringstream in(matrix_text);
        std::string piece;
        std::vector<long long> values;
        while (std::getline(in, piece, ',')) values.push_back(std::stoll(piece));
        if (values.size() != 4)
          throw bookcover::MalformedInput("metabelian: expected 4 comma-separated integers");
        a = {{{Int(values[0]), Int(values[1])}, {Int(values[2]), Int(values[3])}}};
      }
      std::ostringstream csv;
      csv << "n,torsion,log_ratio\n";
      std::size_t emitted = 0;
      for (std::uint32_t n = 1; n <= max_n; ++n) {
        try {
          const Int torsion = bookcover::metabelian_torsion(a, n);
          const double lr =
              torsion == 1 ? 0.0 : bookcover::log_big(torsion) / static_cast<double>(n);
          csv << n << "," << torsion << "," << format_double(lr) << "\n";
          ++emitted;
        } catch (const bookcover::SingularMonodromy& e) {
          std::cerr << "n=" << n << ": " << e.what() << "\n";
        }
      }
      emit(csv.str(), out_path);
      return emitted > 0 ? kExitOk : kExitFailure;
    }
  } catch (const bookcover::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const bookcover::MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
