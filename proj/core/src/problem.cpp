#include "sagbisat/problem.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sagbisat/error.hpp"
#include "sagbisat/groebner.hpp"
#include "sagbisat/saturate.hpp"
#include "sagbisat/subalgebra.hpp"
#include "sagbisat/toric.hpp"
#include "sagbisat/uinv.hpp"

namespace sagbisat {

const std::vector<std::string> kCommands = {"saturate", "satsagbi", "trunc-satsagbi", "mingens", "uinv",
                                            "gb",       "nf",       "rel-mod",        "toric",   "member"};

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

class ProblemParser {
 public:
  explicit ProblemParser(std::string_view text) : text_(text) {
    // Comments become blanks so that positions stay put.
    bool comment = false;
    for (char& c : text_) {
      if (c == '\n') comment = false;
      else if (c == '#') comment = true;
      if (comment) c = ' ';
    }
  }

  ProblemFile parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail_at(0, "expected one of: field, vars, weights, order, let, run");
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      if (have_run_) fail("nothing may follow the run statement");
      statement();
    }
    if (!have_run_) fail("expected 'run <command>'");
    return std::move(p_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    auto [l, c] = position(at);
    throw ParseError(l, c, msg);
  }

  std::pair<int, int> position(std::size_t at) const {
    int l = 1, c = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++l;
        c = 1;
      } else {
        ++c;
      }
    }
    return {l, c};
  }

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected identifier");
    while (pos_ < text_.size() && is_ident(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Body of the current statement, up to (not including) the next ';'.
  std::pair<std::size_t, std::size_t> body() {
    const std::size_t end = text_.find(';', pos_);
    if (end == std::string::npos) fail_at(text_.size(), "expected ';'");
    std::size_t b = pos_;
    while (b < end && is_space(text_[b])) ++b;
    std::size_t e = end;
    while (e > b && is_space(text_[e - 1])) --e;
    pos_ = end + 1;
    return {b, e};
  }

  void statement() {
    const std::size_t at = pos_;
    const std::string kw = identifier();
    if (kw == "field") return field_stmt();
    if (kw == "vars") return vars_stmt();
    if (kw == "weights") return weights_stmt();
    if (kw == "order") return order_stmt();
    if (kw == "let") return let_stmt();
    if (kw == "run") return run_stmt();
    fail_at(at, "unknown statement '" + kw + "'; expected one of: field, vars, weights, order, let, run");
  }

  void before_ring(std::size_t at, const char* what) {
    if (p_.ring) fail_at(at, std::string(what) + " must come before the first let");
  }

  void field_stmt() {
    before_ring(pos_, "field");
    auto [b, e] = body();
    std::string f = text_.substr(b, e - b);
    f.erase(std::remove_if(f.begin(), f.end(), is_space), f.end());
    if (f == "QQ") {
      p_.field = Field::rationals();
      return;
    }
    if (f.rfind("ZZ/", 0) == 0 && f.size() > 3 && std::all_of(f.begin() + 3, f.end(), ::isdigit)) {
      try {
        p_.field = Field::prime(std::stoull(f.substr(3)));
        return;
      } catch (const Error& err) {
        fail_at(b, err.what());
      } catch (const std::out_of_range&) {
        fail_at(b, "modulus out of range");
      }
    }
    fail_at(b, "expected QQ or ZZ/<p>");
  }

  void vars_stmt() {
    before_ring(pos_, "vars");
    auto [b, e] = body();
    const std::string s = text_.substr(b, e - b);
    std::vector<std::string> names;
    if (auto dots = s.find(".."); dots != std::string::npos) {
      auto split = [&](const std::string& t, std::size_t off) {
        std::size_t k = t.size();
        while (k > 0 && std::isdigit(static_cast<unsigned char>(t[k - 1]))) --k;
        if (k == 0 || k == t.size() || !std::all_of(t.begin(), t.begin() + static_cast<long>(k), is_ident))
          fail_at(b + off, "expected <name><number>");
        return std::pair{t.substr(0, k), std::stoi(t.substr(k))};
      };
      auto trim = [](std::string t) {
        t.erase(std::remove_if(t.begin(), t.end(), is_space), t.end());
        return t;
      };
      auto [p1, lo] = split(trim(s.substr(0, dots)), 0);
      auto [p2, hi] = split(trim(s.substr(dots + 2)), dots + 2);
      if (p1 != p2 || hi < lo) fail_at(b, "expected a range like a0..a4");
      for (int i = lo; i <= hi; ++i) names.push_back(p1 + std::to_string(i));
    } else {
      std::stringstream ss(s);
      std::string item;
      std::size_t off = 0;
      while (std::getline(ss, item, ',')) {
        std::string t = item;
        t.erase(std::remove_if(t.begin(), t.end(), is_space), t.end());
        if (t.empty() || !is_ident_start(t[0]) || !std::all_of(t.begin(), t.end(), is_ident))
          fail_at(b + off, "expected a variable name");
        names.push_back(t);
        off += item.size() + 1;
      }
    }
    if (names.empty()) fail_at(b, "expected variables");
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names[i] == names[j]) fail_at(b, "variable '" + names[i] + "' declared twice");
      }
    }
    p_.vars = std::move(names);
  }

  // [[1,2],[3,4]] starting at text_[b], ending before e.
  IntMatrix matrix(std::size_t b, std::size_t e) {
    std::size_t i = b;
    auto ws = [&] {
      while (i < e && is_space(text_[i])) ++i;
    };
    auto expect = [&](char c) {
      ws();
      if (i >= e || text_[i] != c) fail_at(i, std::string("expected '") + c + "'");
      ++i;
    };
    IntMatrix m;
    expect('[');
    do {
      expect('[');
      std::vector<long> row;
      do {
        ws();
        const std::size_t start = i;
        if (i < e && (text_[i] == '-' || text_[i] == '+')) ++i;
        while (i < e && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        if (i == start || !std::isdigit(static_cast<unsigned char>(text_[i - 1]))) fail_at(start, "expected integer");
        row.push_back(std::stol(text_.substr(start, i - start)));
        ws();
      } while (i < e && text_[i] == ',' && ++i);
      expect(']');
      if (!m.empty() && row.size() != m.front().size()) fail_at(i, "rows have different lengths");
      m.push_back(std::move(row));
      ws();
    } while (i < e && text_[i] == ',' && ++i);
    expect(']');
    ws();
    if (i != e) fail_at(i, "unexpected text after matrix");
    return m;
  }

  void weights_stmt() {
    before_ring(pos_, "weights");
    auto [b, e] = body();
    weights_at_ = b;
    weights_ = matrix(b, e);
  }

  void order_stmt() {
    before_ring(pos_, "order");
    auto [b, e] = body();
    order_at_ = b;
    std::size_t i = b;
    while (i < e && is_ident(text_[i])) ++i;
    const std::string kind = text_.substr(b, i - b);
    if (kind == "degrevlex" || kind == "a0degrev") {
      if (i != e) fail_at(i, "unexpected text after order");
      p_.order = kind;
      return;
    }
    if (kind == "matrix") {
      p_.order = kind;
      order_matrix_ = matrix(i, e);
      return;
    }
    fail_at(b, "expected degrevlex, a0degrev or matrix [[..]]");
  }

  void build_ring(std::size_t at) {
    if (p_.ring) return;
    if (p_.vars.empty()) fail_at(at, "no variables declared");
    const std::size_t n = p_.vars.size();
    try {
      if (weights_) {
        for (const auto& row : *weights_) {
          if (row.size() != n) fail_at(weights_at_, "weights need one column per variable");
        }
        p_.weights = Grading(*weights_);
      }
      std::optional<TermOrdering> ord;
      if (p_.order == "degrevlex") {
        ord = TermOrdering::degrevlex(n);
      } else if (p_.order == "a0degrev") {
        if (!p_.weights) fail_at(order_at_, "a0degrev needs a weights statement");
        ord = make_a0_degrev(*p_.weights);
      } else {
        if (order_matrix_.size() != n || order_matrix_.front().size() != n)
          fail_at(order_at_, "the order matrix must be " + std::to_string(n) + "x" + std::to_string(n));
        ord = TermOrdering::from_matrix(order_matrix_);
      }
      p_.ring = std::make_shared<const Ring>(p_.field, p_.vars, *ord, p_.weights);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      fail_at(at, err.what());
    }
  }

  void let_stmt() {
    const std::size_t at = pos_;
    build_ring(at);
    skip_ws();
    const std::size_t name_at = pos_;
    const std::string name = identifier();
    if (p_.ring->index_of(name)) fail_at(name_at, "'" + name + "' is a variable");
    for (const auto& [n, _] : p_.bindings) {
      if (n == name) fail_at(name_at, "'" + name + "' is already bound");
    }
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected '='");
    ++pos_;
    auto [b, e] = body();
    auto [l, c] = position(b);
    Polynomial f = parse_polynomial(p_.ring, std::string_view(text_).substr(b, e - b), &bound_, l, c);
    bound_.emplace(name, f);
    p_.bindings.emplace_back(name, std::move(f));
  }

  void run_stmt() {
    const std::size_t at = pos_;
    skip_ws();
    const std::size_t cmd_at = pos_;
    std::string cmd;
    while (pos_ < text_.size() && (is_ident(text_[pos_]) || text_[pos_] == '-')) cmd += text_[pos_++];
    if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end()) {
      std::string all;
      for (const auto& c : kCommands) all += (all.empty() ? "" : ", ") + c;
      fail_at(cmd_at, "expected a command: " + all);
    }
    p_.command = cmd;
    if (cmd != "uinv") build_ring(at);
    auto [b, e] = body();
    std::size_t i = b;
    while (i < e) {
      while (i < e && (is_space(text_[i]) || text_[i] == ',')) ++i;
      if (i >= e) break;
      const std::size_t key_at = i;
      while (i < e && (is_ident(text_[i]) || text_[i] == '-')) ++i;
      if (i == key_at || i >= e || text_[i] != '=') fail_at(i, "expected key=value");
      std::string key = text_.substr(key_at, i - key_at);
      ++i;
      while (i < e && is_space(text_[i])) ++i;
      const std::size_t val_at = i;
      // A value runs up to a comma or to whitespace followed by `key=`.
      auto next_key = [&](std::size_t k) {
        while (k < e && is_space(text_[k])) ++k;
        const std::size_t s0 = k;
        while (k < e && (is_ident(text_[k]) || text_[k] == '-')) ++k;
        return k > s0 && k < e && text_[k] == '=';
      };
      while (i < e && text_[i] != ',' && !(is_space(text_[i]) && next_key(i))) ++i;
      std::size_t val_end = i;
      while (val_end > val_at && is_space(text_[val_end - 1])) --val_end;
      if (val_end == val_at) fail_at(i, "expected a value");
      p_.args.emplace_back(std::move(key), text_.substr(val_at, val_end - val_at));
      p_.arg_positions.push_back(position(val_at));
    }
    have_run_ = true;
  }

  std::string text_;
  std::size_t pos_ = 0;
  ProblemFile p_;
  Bindings bound_;
  std::optional<IntMatrix> weights_;
  IntMatrix order_matrix_;
  std::size_t weights_at_ = 0, order_at_ = 0;
  bool have_run_ = false;
};

// ------------------------------------------------------------------ running

using json = nlohmann::ordered_json;

struct Report {
  std::string status = "Done";
  std::optional<unsigned> iterations;
  std::vector<Polynomial> generators;
  std::optional<Grading> grading;
  json extra = json::object();
  int exit_code = 0;
};

std::string lt_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  return Polynomial::monomial(p.ring(), FieldElement::one(p.field()), p.leading_term()).to_string();
}

std::vector<long> degree_of(const Polynomial& p, const std::optional<Grading>& w) {
  if (p.is_zero()) return {};
  if (w && w->nvars() == p.nvars()) return w->degree(p.leading_exponents());
  return {static_cast<long>(p.leading_term().total_degree())};
}

std::string render(const std::string& command, const Report& r, const RunFlags& flags) {
  if (flags.json) {
    json j;
    j["command"] = command;
    j["status"] = r.status;
    if (r.iterations) j["iterations"] = *r.iterations;
    else j["iterations"] = nullptr;
    j["generators"] = json::array();
    j["leading_terms"] = json::array();
    j["bidegrees"] = json::array();
    j["support_sizes"] = json::array();
    for (const auto& g : r.generators) {
      j["generators"].push_back(g.to_string());
      j["leading_terms"].push_back(lt_string(g));
      j["bidegrees"].push_back(degree_of(g, r.grading));
      j["support_sizes"].push_back(g.num_terms());
    }
    for (const auto& [k, v] : r.extra.items()) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "status: " << r.status << "\n";
  if (r.iterations) os << "iterations: " << *r.iterations << "\n";
  for (const auto& [k, v] : r.extra.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  os << "generators: " << r.generators.size() << "\n";
  for (const auto& g : r.generators) {
    os << "  " << g.to_string();
    if (flags.stats) {
      os << "    [deg=(";
      auto d = degree_of(g, r.grading);
      for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
      os << ") terms=" << g.num_terms() << " lt=" << lt_string(g) << "]";
    }
    os << "\n";
  }
  return os.str();
}

class Runner {
 public:
  Runner(const ProblemFile& p, const RunFlags& flags) : p_(p), flags_(flags) {
    args_ = p.args;
    for (std::size_t i = 0; i < p.args.size(); ++i) positions_[p.args[i].first] = p.arg_positions[i];
    for (const auto& [k, v] : flags.args) {
      auto it = std::find_if(args_.begin(), args_.end(), [&](const auto& a) { return a.first == k; });
      if (it != args_.end()) it->second = v;
      else args_.emplace_back(k, v);
      positions_.erase(k);
    }
    for (const auto& [name, f] : p.bindings) bound_.emplace(name, f);
  }

  Report run(const std::string& cmd) {
    if (cmd == "uinv") return uinv();
    if (!p_.ring) throw InvalidArgument("no variables declared");
    if (cmd == "saturate") return saturate();
    if (cmd == "satsagbi") return saturation_report(sat_sagbi(presentation(true), options()));
    if (cmd == "trunc-satsagbi")
      return saturation_report(trunc_sat_sagbi(presentation(true), integer("degree"), options()));
    if (cmd == "mingens") {
      Report r;
      r.generators = min_gens(presentation(true));
      r.grading = p_.weights;
      return r;
    }
    if (cmd == "gb") {
      Report r;
      r.generators = buchberger(generators()).generators;
      r.grading = p_.weights;
      return r;
    }
    if (cmd == "nf") {
      Report r;
      Polynomial f = poly("f");
      r.generators = {normal_form(f, buchberger(generators()))};
      r.grading = p_.weights;
      return r;
    }
    if (cmd == "rel-mod") {
      Report r;
      r.generators = rel_mod_g(presentation(false), poly("g"));
      return r;
    }
    if (cmd == "toric") {
      Report r;
      std::vector<Term> lts;
      for (const auto& g : generators()) {
        if (!g.is_zero()) lts.push_back(g.leading_term());
      }
      BinomialIdeal ideal = toric_ideal(lts, p_.weights);
      r.generators = ideal.polynomials(relation_ring(p_.field, lts.size()));
      return r;
    }
    if (cmd == "member") {
      Report r;
      Polynomial f = poly("f");
      auto cert = member(f, presentation(false));
      r.status = cert.verdict == Verdict::In ? "In" : "Out";
      if (cert.witness) r.generators = {*cert.witness};
      return r;
    }
    throw InvalidArgument("unknown command '" + cmd + "'");
  }

 private:
  const std::string* arg(const std::string& key) const {
    for (const auto& [k, v] : args_) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  long integer(const std::string& key) const {
    const std::string* v = arg(key);
    if (!v) throw InvalidArgument("missing argument " + key);
    try {
      std::size_t used = 0;
      long x = std::stol(*v, &used);
      if (used == v->size()) return x;
    } catch (const std::exception&) {
    }
    throw InvalidArgument(key + " must be an integer");
  }

  Polynomial poly(const std::string& key) const {
    const std::string* v = arg(key);
    if (!v) throw InvalidArgument("missing argument " + key);
    auto it = positions_.find(key);
    auto [l, c] = it != positions_.end() ? it->second : std::pair{1, 1};
    return parse_polynomial(p_.ring, *v, &bound_, l, c);
  }

  // Bindings not used verbatim as an argument value.
  std::vector<Polynomial> generators() const {
    std::vector<Polynomial> out;
    for (const auto& [name, f] : p_.bindings) {
      bool used = std::any_of(args_.begin(), args_.end(), [&](const auto& a) { return a.second == name; });
      if (!used) out.push_back(f);
    }
    if (out.empty()) throw InvalidArgument("no generators bound with let");
    return out;
  }

  SubalgebraPresentation presentation(bool graded) const {
    auto gens = generators();
    if (!graded || !p_.weights) {
      auto s = SubalgebraPresentation::make(gens);
      if (p_.weights && std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) {
            return is_homogeneous(g, *p_.weights);
          }))
        s.grading = p_.weights;
      return s;
    }
    return SubalgebraPresentation::make(gens, p_.weights);
  }

  SaturationOptions options() const {
    SaturationOptions o;
    o.max_iterations = flags_.max_iterations;
    o.cancel = flags_.cancel;
    if (flags_.verbose && flags_.progress) {
      std::ostream* os = flags_.progress;
      o.on_progress = [os](const Progress& p) {
        *os << "deg=" << p.degree << " basis=" << p.basis_size << " maxterms=" << p.max_terms << std::endl;
      };
    }
    return o;
  }

  Report saturation_report(SaturationResult res) const {
    Report r;
    r.status = res.status == SaturationStatus::Stabilized ? "Stabilized" : "IterationLimit";
    r.exit_code = res.status == SaturationStatus::Stabilized ? 0 : 2;
    r.iterations = res.iterations;
    r.generators = std::move(res.algebra.generators);
    r.grading = p_.weights;
    if (res.truncation_degree) r.extra["truncation_degree"] = *res.truncation_degree;
    return r;
  }

  Report saturate() {
    Polynomial g = poly("g");
    return saturation_report(subalgebra_saturation(presentation(false), g, options()));
  }

  Report uinv() {
    UinvProblem prob{static_cast<int>(integer("n")), p_.field, integer("degree")};
    UinvResult res = compute_Sn(prob, options());
    Report r = saturation_report(res.sagbi);
    r.extra["sagbi_size"] = res.sagbi.algebra.size();
    r.generators = std::move(res.minimal);
    r.grading = uinv_grading(prob.n);
    return r;
  }

  const ProblemFile& p_;
  const RunFlags& flags_;
  std::vector<std::pair<std::string, std::string>> args_;
  std::map<std::string, std::pair<int, int>> positions_;
  Bindings bound_;
};

}  // namespace

ProblemFile parse_problem(std::string_view text) { return ProblemParser(text).parse(); }

RunOutput run_command(const ProblemFile& p, const RunFlags& flags) {
  const std::string cmd = flags.command.empty() ? p.command : flags.command;
  RunOutput out;
  try {
    Runner runner(p, flags);
    Report r = runner.run(cmd);
    out.exit_code = r.exit_code;
    out.text = render(cmd, r, flags);
  } catch (const Error& err) {
    out.exit_code = 1;
    if (flags.json) {
      json j;
      j["command"] = cmd;
      j["status"] = "Error";
      j["error"] = err.what();
      out.text = j.dump(2) + "\n";
    } else {
      out.text = std::string("error: ") + err.what() + "\n";
    }
  }
  return out;
}

}  // namespace sagbisat
