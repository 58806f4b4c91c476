#include "ergocert/error.hpp"
#include "ergocert/model.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace ergocert::model {

Domain Domain::fixed(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw PreconditionError("fixed rate value must be positive and finite");
  Domain d;
  d.kind = Kind::Fixed;
  d.lo = d.hi = value;
  return d;
}

Domain Domain::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw PreconditionError("interval domain needs 0 <= lo <= hi < inf");
  if (lo == hi && !(lo_closed && hi_closed))
    throw PreconditionError("degenerate interval must be closed");
  Domain d;
  d.kind = Kind::Interval;
  d.lo = lo;
  d.hi = hi;
  d.lo_closed = lo_closed;
  d.hi_closed = hi_closed;
  return d;
}

Domain Domain::positive() { return Domain{}; }

std::string Domain::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17);
  switch (kind) {
    case Kind::Fixed: os << "= " << lo; break;
    case Kind::Interval:
      os << "in " << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
      break;
    case Kind::PositiveUnbounded: os << "> 0"; break;
  }
  return os.str();
}

int Reaction::order() const {
  int n = 0;
  for (const auto& [s, c] : reactants) n += c;
  return n;
}

int ReactionNetwork::species_index(std::string_view name) const {
  for (std::size_t i = 0; i < species.size(); ++i)
    if (species[i] == name) return static_cast<int>(i);
  return -1;
}

Eigen::VectorXi ReactionNetwork::stoichiometry(int k) const {
  Eigen::VectorXi z = Eigen::VectorXi::Zero(d());
  for (const auto& [s, c] : reactions.at(k).products) z[s] += c;
  for (const auto& [s, c] : reactions.at(k).reactants) z[s] -= c;
  return z;
}

const Domain& ReactionNetwork::domain(const std::string& symbol) const {
  auto it = domains.find(symbol);
  if (it == domains.end()) throw PreconditionError("no domain for rate symbol '" + symbol + "'");
  return it->second;
}

namespace {

enum class Tok { Ident, Number, Arrow, At, Plus, Eq, Gt, LBrack, RBrack, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Arrow: return "'->'";
    case Tok::At: return "'@'";
    case Tok::Plus: return "'+'";
    case Tok::Eq: return "'='";
    case Tok::Gt: return "'>'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of line";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

// Reaction lines only admit integer counts, so "2X" lexes as 2, X.
std::vector<Token> lex(std::string_view line, std::size_t lineno, bool integer_numbers) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", col});
      i += 2;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (digit(c) || c == '.' || (!integer_numbers && (c == '-' || c == '+') && i + 1 < line.size() &&
                                 (digit(line[i + 1]) || line[i + 1] == '.'))) {
      std::size_t j = i;
      if (line[j] == '-' || line[j] == '+') ++j;
      while (j < line.size() && digit(line[j])) ++j;
      if (!integer_numbers) {
        if (j < line.size() && line[j] == '.') {
          ++j;
          while (j < line.size() && digit(line[j])) ++j;
        }
        if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
          if (k < line.size() && digit(line[k])) {
            j = k;
            while (j < line.size() && digit(line[j])) ++j;
          }
        }
      }
      if (j == i || (j == i + 1 && !digit(line[i]) && line[i] != '.'))
        throw ParseError("malformed number", lineno, col);
      out.push_back({Tok::Number, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '@': kind = Tok::At; break;
      case '+': kind = Tok::Plus; break;
      case '=': kind = Tok::Eq; break;
      case '>': kind = Tok::Gt; break;
      case '[': kind = Tok::LBrack; break;
      case ']': kind = Tok::RBrack; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case ',': kind = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
    }
    out.push_back({kind, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t lineno) : toks_(std::move(tokens)), line_(lineno) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k) {
    if (peek().kind != k) fail(std::string("expected ") + describe(k) + ", found " + found());
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, peek().column); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t column) const {
    throw ParseError(msg, line_, column);
  }
  std::string found() const {
    const auto& t = peek();
    return t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
  }

  double number() {
    const Token& t = expect(Tok::Number);
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail_at("malformed number '" + t.text + "'", t.column);
    return v;
  }

  std::size_t line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

struct Builder {
  ReactionNetwork net;
  std::map<std::string, std::size_t> rate_line;
  std::map<std::string, std::size_t> domain_line;

  int species(const std::string& name) {
    int i = net.species_index(name);
    if (i >= 0) return i;
    net.species.push_back(name);
    return net.d() - 1;
  }

  Complex complex(LineParser& p) {
    std::map<int, int> counts;
    if (p.peek().kind == Tok::Number && p.peek().text == "0") {
      p.next();
      return {};
    }
    while (true) {
      int count = 1;
      if (p.peek().kind == Tok::Number) {
        const Token& t = p.next();
        const auto parsed = std::stoll(t.text);
        if (parsed < 1 || parsed > 1000000) p.fail_at("stoichiometric count must be a positive integer", t.column);
        count = static_cast<int>(parsed);
      }
      if (p.peek().kind != Tok::Ident) p.fail("expected species name, found " + p.found());
      counts[species(p.next().text)] += count;
      if (!p.accept(Tok::Plus)) break;
    }
    return {counts.begin(), counts.end()};
  }

  void reaction(LineParser& p) {
    const std::size_t start = p.peek().column;
    Reaction r;
    r.line = p.line();
    r.reactants = complex(p);
    p.expect(Tok::Arrow);
    r.products = complex(p);
    p.expect(Tok::At);
    const Token& rate = p.expect(Tok::Ident);
    r.rate = rate.text;
    p.expect(Tok::End);
    if (r.order() > 2)
      p.fail_at("trimolecular reaction: reactant complex has total multiplicity " +
                    std::to_string(r.order()) + " (at most 2 supported)",
                start);
    if (r.reactants == r.products) p.fail_at("reaction does not change any species count", start);
    if (auto it = rate_line.find(r.rate); it != rate_line.end())
      p.fail_at("duplicate rate symbol '" + r.rate + "' (first used on line " + std::to_string(it->second) + ")",
                rate.column);
    rate_line[r.rate] = r.line;
    net.reactions.push_back(std::move(r));
  }

  void domain(LineParser& p) {
    const Token& sym = p.expect(Tok::Ident);
    if (auto it = domain_line.find(sym.text); it != domain_line.end())
      p.fail_at("parameter '" + sym.text + "' already declared on line " + std::to_string(it->second), sym.column);
    Domain d;
    const std::size_t col = p.peek().column;
    try {
      if (p.accept(Tok::Eq)) {
        d = Domain::fixed(p.number());
      } else if (p.peek().kind == Tok::Ident && p.peek().text == "in") {
        p.next();
        bool lo_closed = true;
        if (p.accept(Tok::LParen))
          lo_closed = false;
        else
          p.expect(Tok::LBrack);
        const double lo = p.number();
        p.expect(Tok::Comma);
        const double hi = p.number();
        bool hi_closed = true;
        if (p.accept(Tok::RParen))
          hi_closed = false;
        else
          p.expect(Tok::RBrack);
        d = Domain::interval(lo, hi, lo_closed, hi_closed);
      } else if (p.accept(Tok::Gt)) {
        const Token& zero = p.peek();
        if (p.number() != 0.0) p.fail_at("only '> 0' is supported for unbounded parameters", zero.column);
        d = Domain::positive();
      } else {
        p.fail("expected '=', 'in' or '>' after parameter name, found " + p.found());
      }
    } catch (const PreconditionError& e) {
      p.fail_at(e.what(), col);
    }
    p.expect(Tok::End);
    domain_line[sym.text] = p.line();
    net.domains[sym.text] = d;
  }
};

}  // namespace

ReactionNetwork parse_network(std::string_view text) {
  Builder b;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++lineno;
    const std::string_view code = line.substr(0, line.find('#'));
    const bool is_reaction = code.find("->") != std::string_view::npos;
    auto tokens = lex(line, lineno, is_reaction);
    if (tokens.size() > 1) {
      LineParser p(std::move(tokens), lineno);
      if (is_reaction)
        b.reaction(p);
      else
        b.domain(p);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  for (const auto& r : b.net.reactions) {
    if (!b.net.domains.count(r.rate))
      throw ParseError("undeclared parameter '" + r.rate + "'", r.line, 1);
  }
  for (const auto& [sym, line] : b.domain_line) {
    if (!b.rate_line.count(sym)) throw ParseError("parameter '" + sym + "' is not the rate of any reaction", line, 1);
  }
  if (b.net.reactions.empty()) throw ParseError("network has no reactions", lineno, 1);
  return std::move(b.net);
}

ReactionNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open network file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

std::string to_source(const ReactionNetwork& net) {
  std::ostringstream os;
  auto complex = [&](const Complex& c) {
    if (c.empty()) {
      os << "0";
      return;
    }
    bool first = true;
    for (const auto& [s, n] : c) {
      if (!first) os << " + ";
      if (n != 1) os << n << ' ';
      os << net.species[s];
      first = false;
    }
  };
  for (const auto& r : net.reactions) {
    complex(r.reactants);
    os << " -> ";
    complex(r.products);
    os << " @ " << r.rate << '\n';
  }
  for (const auto& r : net.reactions) os << r.rate << ' ' << net.domain(r.rate).to_string() << '\n';
  return os.str();
}

}  // namespace ergocert::model
