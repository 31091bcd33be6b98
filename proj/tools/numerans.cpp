#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "numerans/adherence.hpp"
#include "numerans/counting.hpp"
#include "numerans/numeration.hpp"
#include "numerans/oracle.hpp"
#include "numerans/reals.hpp"

namespace {

using namespace numerans;

struct SystemChoice {
  std::string lang;
  std::string dfa_path;
};

void add_system_options(CLI::App* cmd, SystemChoice& choice) {
  cmd->add_option("--lang", choice.lang, "builtin language name (see `langs`)");
  cmd->add_option("--dfa", choice.dfa_path, "DFA description file");
}

NumerationSystem load_system(const SystemChoice& choice) {
  if (!choice.dfa_path.empty()) {
    std::ifstream in(choice.dfa_path);
    if (!in) throw input_error("cannot open DFA file '" + choice.dfa_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return make_system(parse_dfa_file(text.str()), choice.dfa_path);
  }
  if (choice.lang.empty())
    throw input_error("choose a system with --lang or --dfa");
  return builtin_system(choice.lang);
}

std::string fmt_real(const RealValue& v) {
  return v.is_exact() ? format_ratio(v.value()) : v.str();
}

std::string fmt_interval(const Alphabet& sigma, const Interval& iv) {
  return format_word(sigma, iv.label) + ": [" + fmt_real(iv.lo) + ", " +
         fmt_real(iv.hi) + "]";
}

void print_adherence_word(const NumerationSystem& sys, const char* tag,
                          const AdherenceWord& w) {
  if (w.is_exact()) {
    std::cout << tag << ": " << format_up_word(sys.alphabet(), *w.exact)
              << "\n";
    return;
  }
  constexpr std::size_t kShown = 64;
  Word head(w.prefix.begin(),
            w.prefix.begin() +
                static_cast<std::ptrdiff_t>(std::min(w.prefix.size(), kShown)));
  std::cout << tag << ": prefix " << format_word(sys.alphabet(), head);
  if (w.prefix.size() > kShown)
    std::cout << "... (" << w.prefix.size() << " letters)";
  std::cout << " (depth " << w.depth << "; " << w.note << ")\n";
}

int run(int argc, char** argv) {
  CLI::App app{"numeration systems over ordered languages"};
  app.require_subcommand(1);
  std::function<void()> action;

  // langs
  {
    CLI::App* cmd = app.add_subcommand("langs", "list builtin languages");
    cmd->callback([&action]() {
      action = []() {
        for (const std::string& name : builtin_names())
          std::cout << name << "\n";
      };
    });
  }

  // enumerate
  {
    auto choice = std::make_shared<SystemChoice>();
    auto n = std::make_shared<int>(3);
    CLI::App* cmd =
        app.add_subcommand("enumerate", "list all words of length <= n");
    add_system_options(cmd, *choice);
    cmd->add_option("-n,--max-length", *n, "maximum word length");
    cmd->callback([&action, choice, n]() {
      action = [choice, n]() {
        NumerationSystem sys = load_system(*choice);
        EnumeratedLanguage lang = enumerate_upto(sys, *n);
        for (const Word& w : lang.words)
          std::cout << format_word(sys.alphabet(), w) << "\n";
      };
    });
  }

  // val
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand("val", "genealogical index of a word");
    add_system_options(cmd, *choice);
    cmd->add_option("word", *literal, "word literal")->required();
    cmd->callback([&action, choice, literal]() {
      action = [choice, literal]() {
        NumerationSystem sys = load_system(*choice);
        Word w = parse_word(sys.alphabet(), *literal);
        std::cout << value_of(sys, w).get_str() << "\n";
      };
    });
  }

  // rep
  {
    auto choice = std::make_shared<SystemChoice>();
    auto number = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand("rep", "word whose index is n");
    add_system_options(cmd, *choice);
    cmd->add_option("n", *number, "nonnegative integer")->required();
    cmd->callback([&action, choice, number]() {
      action = [choice, number]() {
        NumerationSystem sys = load_system(*choice);
        BigCount n;
        try {
          n = BigCount(*number);
        } catch (const std::invalid_argument&) {
          throw input_error("bad integer literal '" + *number + "'");
        }
        std::cout << format_word(sys.alphabet(), word_at(sys, n)) << "\n";
      };
    });
  }

  // classify
  {
    auto choice = std::make_shared<SystemChoice>();
    CLI::App* cmd =
        app.add_subcommand("classify", "growth classification of a finite DFA");
    add_system_options(cmd, *choice);
    cmd->callback([&action, choice]() {
      action = [choice]() {
        NumerationSystem sys = load_system(*choice);
        GrowthClass g = classify(sys.spec);
        std::cout << "growth: "
                  << (g.kind == GrowthClass::Exponential ? "exponential"
                                                         : "polynomial")
                  << "\n";
        if (g.kind == GrowthClass::Polynomial)
          std::cout << "degree_bound: " << g.degree_bound << "\n";
        std::cout << "uncountable_adherence: "
                  << (g.uncountable_adherence ? "true" : "false") << "\n";
        std::cout << "uncountable_linfty: "
                  << (g.uncountable_linfty ? "true" : "false") << "\n";
      };
    });
  }

  // minmax
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>("eps");
    CLI::App* cmd = app.add_subcommand(
        "minmax", "least/greatest adherence word with a given prefix");
    auto cap = std::make_shared<long>(1000000);
    add_system_options(cmd, *choice);
    cmd->add_option("prefix", *literal, "center word prefix (default eps)");
    cmd->add_option("--cap", *cap, "greedy walk depth cap");
    cmd->callback([&action, choice, literal, cap]() {
      action = [choice, literal, cap]() {
        NumerationSystem sys = load_system(*choice);
        Word y = parse_word(sys.alphabet(), *literal);
        print_adherence_word(sys, "min", min_word(sys, y, *cap));
        print_adherence_word(sys, "max", max_word(sys, y, *cap));
      };
    });
  }

  // interval
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>("eps");
    CLI::App* cmd =
        app.add_subcommand("interval", "interval I_y of a center word");
    add_system_options(cmd, *choice);
    cmd->add_option("word", *literal, "center word (default eps)");
    cmd->callback([&action, choice, literal]() {
      action = [choice, literal]() {
        NumerationSystem sys = load_system(*choice);
        Word y = parse_word(sys.alphabet(), *literal);
        std::cout << fmt_interval(sys.alphabet(), interval_of(sys, y)) << "\n";
      };
    });
  }

  // subdivide
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>("eps");
    CLI::App* cmd =
        app.add_subcommand("subdivide", "children intervals of I_y");
    add_system_options(cmd, *choice);
    cmd->add_option("word", *literal, "center word (default eps)");
    cmd->callback([&action, choice, literal]() {
      action = [choice, literal]() {
        NumerationSystem sys = load_system(*choice);
        Word y = parse_word(sys.alphabet(), *literal);
        for (const Interval& child : subdivide(sys, y))
          std::cout << fmt_interval(sys.alphabet(), child) << "\n";
      };
    });
  }

  // encode
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(8);
    auto policy = std::make_shared<std::string>("rightmost");
    CLI::App* cmd = app.add_subcommand(
        "encode", "center word of given depth whose interval contains x");
    add_system_options(cmd, *choice);
    cmd->add_option("x", *literal, "rational in [s0, 1]")->required();
    cmd->add_option("-d,--depth", *depth, "word length");
    cmd->add_option("--policy", *policy, "leftmost | rightmost")
        ->check(CLI::IsMember({"leftmost", "rightmost"}));
    cmd->callback([&action, choice, literal, depth, policy]() {
      action = [choice, literal, depth, policy]() {
        NumerationSystem sys = load_system(*choice);
        Ratio x = parse_ratio(*literal);
        BoundaryPolicy p = (*policy == "leftmost") ? BoundaryPolicy::Leftmost
                                                   : BoundaryPolicy::Rightmost;
        std::cout << format_word(sys.alphabet(),
                                 encode_real(sys, x, *depth, p))
                  << "\n";
      };
    });
  }

  // decode
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>();
    CLI::App* cmd = app.add_subcommand(
        "decode", "real value of an ultimately periodic word");
    add_system_options(cmd, *choice);
    cmd->add_option("word", *literal, "UPWord literal pre(per)^w")->required();
    cmd->callback([&action, choice, literal]() {
      action = [choice, literal]() {
        NumerationSystem sys = load_system(*choice);
        UPWord w = parse_up_word(sys.alphabet(), *literal);
        std::cout << fmt_real(value_of_infinite(sys, w)) << "\n";
      };
    });
  }

  // converge
  {
    auto choice = std::make_shared<SystemChoice>();
    auto literal = std::make_shared<std::string>();
    auto n = std::make_shared<int>(15);
    auto csv = std::make_shared<bool>(false);
    CLI::App* cmd = app.add_subcommand(
        "converge", "table of val(prefix)/v(n) approximations");
    add_system_options(cmd, *choice);
    cmd->add_option("word", *literal, "UPWord literal pre(per)^w")->required();
    cmd->add_option("-n,--rows", *n, "number of rows");
    cmd->add_flag("--csv", *csv, "CSV output");
    cmd->callback([&action, choice, literal, n, csv]() {
      action = [choice, literal, n, csv]() {
        NumerationSystem sys = load_system(*choice);
        UPWord w = parse_up_word(sys.alphabet(), *literal);
        ConvergenceTable table = convergence_table(sys, w, *n);
        if (*csv) std::cout << "n,prefix,val,v,ratio_exact,ratio_dec\n";
        for (const ConvergenceRow& row : table.rows) {
          std::string prefix = format_word(sys.alphabet(), row.prefix);
          std::string exact = format_ratio(row.ratio);
          std::string dec = format_decimal(row.ratio, 5);
          if (*csv)
            std::cout << row.n << ',' << prefix << ',' << row.val.get_str()
                      << ',' << row.v.get_str() << ',' << exact << ',' << dec
                      << "\n";
          else
            std::cout << row.n << "  " << prefix << "  " << row.val.get_str()
                      << "  " << row.v.get_str() << "  " << exact << "  "
                      << dec << "\n";
        }
        if (table.truncated) std::cerr << table.note << "\n";
      };
    });
  }

  // kbound
  {
    auto n = std::make_shared<int>(60);
    CLI::App* cmd = app.add_subcommand(
        "kbound", "enclosure of the 3/2-system constant K");
    cmd->add_option("-n,--order", *n, "enclosure order");
    cmd->callback([&action, n]() {
      action = [n]() { std::cout << k_enclosure(*n).str() << "\n"; };
    });
  }

  // demo-nonprefix
  {
    auto n = std::make_shared<int>(1000);
    CLI::App* cmd = app.add_subcommand(
        "demo-nonprefix",
        "balanced language: the ratio sequence has two accumulation points");
    cmd->add_option("-n,--blocks", *n, "number of ab blocks");
    cmd->callback([&action, n]() {
      action = [n]() {
        NumerationSystem sys = builtin_system("balanced");
        int k = *n;
        Word even, odd;
        for (int i = 0; i < k; ++i) {
          even.push_back(0);
          even.push_back(1);
        }
        odd = even;
        odd.push_back(0);
        Ratio re(value_of(sys, even), count_v(sys, sys.spec.initial, 2 * k));
        re.canonicalize();
        Ratio ro(value_of(sys, odd),
                 count_v(sys, sys.spec.initial, 2 * k + 1));
        ro.canonicalize();
        std::cout << "even prefixes (ab)^k: limit 3/4, at k=" << k << ": "
                  << format_ratio(re) << " = " << format_decimal(re, 5)
                  << "\n";
        std::cout << "odd prefixes (ab)^k a: limit 3/5, at k=" << k << ": "
                  << format_ratio(ro) << " = " << format_decimal(ro, 5)
                  << "\n";
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const value_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
