#include "glkit/arith.hpp"

namespace glkit {

namespace {

// Term precedence: sums 1, products 2, everything else 3.
int term_prec(const ArithTerm& t) {
  switch (t.kind()) {
    case TermKind::Add: return 1;
    case TermKind::Mul: return 2;
    default: return 3;
  }
}

// Formula precedence: -> 1, | 2, & 3, ~ 4, atoms and quantifiers 5.
int formula_prec(const ArithFormula& f) {
  switch (f.kind()) {
    case ArithKind::Imp: return 1;
    case ArithKind::Or: return 2;
    case ArithKind::And: return 3;
    case ArithKind::Not: return 4;
    default: return 5;
  }
}

class Printer {
 public:
  explicit Printer(bool latex) : latex_(latex) {}

  void term(const ArithTerm& t, int min_prec) {
    const bool parens = term_prec(t) < min_prec;
    if (parens) out_ += '(';
    switch (t.kind()) {
      case TermKind::Zero: out_ += '0'; break;
      case TermKind::One: out_ += '1'; break;
      case TermKind::Var: out_ += t.name(); break;
      case TermKind::Add:
        term(t.lhs(), 1);
        out_ += '+';
        term(t.rhs(), 2);
        break;
      case TermKind::Mul:
        term(t.lhs(), 2);
        out_ += latex_ ? "\\cdot " : "*";
        term(t.rhs(), 3);
        break;
      case TermKind::Exp: apply(latex_ ? "\\exp" : "exp", t.lhs()); break;
      case TermKind::Log: apply(latex_ ? "\\log" : "log", t.lhs()); break;
      case TermKind::ExpStar: apply(latex_ ? "\\exp^{\\star}" : "expstar", t.lhs()); break;
      case TermKind::LogStar: apply(latex_ ? "\\log^{\\star}" : "logstar", t.lhs()); break;
      case TermKind::Quote:
        out_ += latex_ ? "\\ulcorner " : "#(";
        formula(t.quoted(), 0);
        out_ += latex_ ? "\\urcorner" : ")";
        break;
    }
    if (parens) out_ += ')';
  }

  void formula(const ArithFormula& f, int min_prec) {
    const bool parens = formula_prec(f) < min_prec;
    if (parens) out_ += '(';
    switch (f.kind()) {
      case ArithKind::Eq: relation(f, "="); break;
      case ArithKind::Less: relation(f, "<"); break;
      case ArithKind::Leq: relation(f, latex_ ? "\\le " : "<="); break;
      case ArithKind::CongMod:
        term(f.term(), 1);
        if (latex_) {
          out_ += "\\equiv " + std::to_string(f.residue()) + "\\ (\\mathrm{mod}\\ " +
                  std::to_string(f.modulus()) + ")";
        } else {
          out_ += " === " + std::to_string(f.residue()) + " (mod " + std::to_string(f.modulus()) + ")";
        }
        break;
      case ArithKind::Prf:
        if (latex_) {
          out_ += "\\mathsf{Prf}";
          if (f.theory().k > 0) {
            out_ += "_{\\mathsf{PA}+\\Diamond^{" + std::to_string(f.theory().k) + "}\\top}";
          }
        } else {
          out_ += "Prf";
          if (f.theory().k > 0) out_ += "[PA+Dia^" + std::to_string(f.theory().k) + "(T)]";
        }
        out_ += '(';
        term(f.left(), 1);
        out_ += ',';
        term(f.right(), 1);
        out_ += ')';
        break;
      case ArithKind::Not:
        out_ += latex_ ? "\\lnot " : "~";
        formula(f.lhs(), 4);
        break;
      case ArithKind::And: binary(f, latex_ ? " \\land " : " & ", 3, 4); break;
      case ArithKind::Or: binary(f, latex_ ? " \\lor " : " | ", 2, 3); break;
      case ArithKind::Imp: binary(f, latex_ ? " \\to " : " -> ", 2, 1); break;
      case ArithKind::ForAll:
      case ArithKind::Exists:
      case ArithKind::BoundedForAll:
      case ArithKind::BoundedExists: {
        const bool all = f.kind() == ArithKind::ForAll || f.kind() == ArithKind::BoundedForAll;
        if (latex_) {
          out_ += all ? "\\forall " : "\\exists ";
          out_ += f.var();
          if (f.is_bounded()) {
            out_ += '<';
            term(f.term(), 1);
          }
          out_ += '(';
        } else {
          out_ += all ? "forall " : "exists ";
          out_ += f.var();
          if (f.is_bounded()) {
            out_ += " < ";
            term(f.term(), 1);
          }
          out_ += ".(";
        }
        formula(f.body(), 0);
        out_ += ')';
        break;
      }
    }
    if (parens) out_ += ')';
  }

  std::string take() { return std::move(out_); }

 private:
  void apply(const char* fn, const ArithTerm& arg) {
    out_ += fn;
    out_ += '(';
    term(arg, 1);
    out_ += ')';
  }

  void relation(const ArithFormula& f, const char* op) {
    term(f.left(), 1);
    out_ += op;
    term(f.right(), 1);
  }

  void binary(const ArithFormula& f, const char* op, int left_prec, int right_prec) {
    formula(f.lhs(), left_prec);
    out_ += op;
    formula(f.rhs(), right_prec);
  }

  bool latex_;
  std::string out_;
};

const char* term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::Zero: return "zero";
    case TermKind::One: return "one";
    case TermKind::Var: return "var";
    case TermKind::Add: return "add";
    case TermKind::Mul: return "mul";
    case TermKind::Exp: return "exp";
    case TermKind::Log: return "log";
    case TermKind::ExpStar: return "expstar";
    case TermKind::LogStar: return "logstar";
    case TermKind::Quote: return "quote";
  }
  return "?";
}

const char* formula_kind_name(ArithKind k) {
  switch (k) {
    case ArithKind::Eq: return "eq";
    case ArithKind::Less: return "less";
    case ArithKind::Leq: return "leq";
    case ArithKind::CongMod: return "congmod";
    case ArithKind::Prf: return "prf";
    case ArithKind::Not: return "not";
    case ArithKind::And: return "and";
    case ArithKind::Or: return "or";
    case ArithKind::Imp: return "imp";
    case ArithKind::ForAll: return "forall";
    case ArithKind::Exists: return "exists";
    case ArithKind::BoundedForAll: return "bounded_forall";
    case ArithKind::BoundedExists: return "bounded_exists";
  }
  return "?";
}

}  // namespace

std::string print_term(const ArithTerm& t, ArithFormat format) {
  if (format == ArithFormat::Json) return term_to_json(t).dump();
  Printer p(format == ArithFormat::Latex);
  p.term(t, 0);
  return p.take();
}

std::string print_arith(const ArithFormula& f, ArithFormat format) {
  if (format == ArithFormat::Json) return arith_to_json(f).dump();
  Printer p(format == ArithFormat::Latex);
  p.formula(f, 0);
  return p.take();
}

nlohmann::json term_to_json(const ArithTerm& t) {
  nlohmann::json j{{"kind", term_kind_name(t.kind())}};
  switch (t.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      break;
    case TermKind::Var: j["name"] = t.name(); break;
    case TermKind::Add:
    case TermKind::Mul:
      j["lhs"] = term_to_json(t.lhs());
      j["rhs"] = term_to_json(t.rhs());
      break;
    case TermKind::Quote: j["formula"] = arith_to_json(t.quoted()); break;
    default: j["arg"] = term_to_json(t.lhs()); break;
  }
  return j;
}

nlohmann::json arith_to_json(const ArithFormula& f) {
  nlohmann::json j{{"kind", formula_kind_name(f.kind())}};
  switch (f.kind()) {
    case ArithKind::Eq:
    case ArithKind::Less:
    case ArithKind::Leq:
      j["lhs"] = term_to_json(f.left());
      j["rhs"] = term_to_json(f.right());
      break;
    case ArithKind::CongMod:
      j["term"] = term_to_json(f.term());
      j["residue"] = f.residue();
      j["modulus"] = f.modulus();
      break;
    case ArithKind::Prf:
      j["theory"] = f.theory().k;
      j["proof"] = term_to_json(f.left());
      j["target"] = term_to_json(f.right());
      break;
    case ArithKind::Not: j["operand"] = arith_to_json(f.lhs()); break;
    case ArithKind::And:
    case ArithKind::Or:
    case ArithKind::Imp:
      j["lhs"] = arith_to_json(f.lhs());
      j["rhs"] = arith_to_json(f.rhs());
      break;
    default:
      j["var"] = f.var();
      if (f.is_bounded()) j["bound"] = term_to_json(f.term());
      j["body"] = arith_to_json(f.body());
      break;
  }
  return j;
}

}  // namespace glkit
