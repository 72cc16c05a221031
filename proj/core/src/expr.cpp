#include "metrize/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <type_traits>

#include "metrize/errors.hpp"

namespace metrize {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct FnName {
  std::string_view name;
  UnFn fn;
};

constexpr FnName kFunctions[] = {
    {"neg", UnFn::Neg}, {"sin", UnFn::Sin}, {"cos", UnFn::Cos}, {"tan", UnFn::Tan},
    {"cot", UnFn::Cot}, {"exp", UnFn::Exp}, {"log", UnFn::Log}, {"sqrt", UnFn::Sqrt}};

std::optional<UnFn> lookup_function(std::string_view id) {
  for (const auto& f : kFunctions)
    if (f.name == id) return f.fn;
  return std::nullopt;
}

std::string_view function_name(UnFn fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

// --- scalar primitives mirroring the Jet2 math functions ------------------
// The double path must raise the same DomainErrors and produce the same
// value-lane arithmetic as the jet path.

double apply_fn(UnFn fn, double u) {
  switch (fn) {
    case UnFn::Neg: return -u;
    case UnFn::Sin: return std::sin(u);
    case UnFn::Cos: return std::cos(u);
    case UnFn::Tan:
      if (std::cos(u) == 0.0) throw DomainError("tan", u);
      return std::tan(u);
    case UnFn::Cot: {
      const double s = std::sin(u);
      if (s == 0.0) throw DomainError("cot", u);
      return std::cos(u) / s;
    }
    case UnFn::Exp: return std::exp(u);
    case UnFn::Log:
      if (!(u > 0.0)) throw DomainError("log", u);
      return std::log(u);
    case UnFn::Sqrt:
      if (u < 0.0) throw DomainError("sqrt", u);
      return std::sqrt(u);
  }
  throw InvalidArgument("bad function tag");
}

Jet2 apply_fn(UnFn fn, const Jet2& u) {
  switch (fn) {
    case UnFn::Neg: return -u;
    case UnFn::Sin: return sin(u);
    case UnFn::Cos: return cos(u);
    case UnFn::Tan: return tan(u);
    case UnFn::Cot: return cot(u);
    case UnFn::Exp: return exp(u);
    case UnFn::Log: return log(u);
    case UnFn::Sqrt: return sqrt(u);
  }
  throw InvalidArgument("bad function tag");
}

double pow_int(double base, long long n) {
  if (n == 0) return 1.0;
  const bool neg = n < 0;
  unsigned long long e =
      neg ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  double acc = 1.0, sq = base;
  while (e > 0) {
    if (e & 1ull) acc = acc * sq;
    e >>= 1;
    if (e > 0) sq = sq * sq;
  }
  if (neg) {
    if (acc == 0.0) throw DomainError("pow", base);
    return 1.0 / acc;
  }
  return acc;
}

double pow_general(double base, double expo) {
  if (!(base > 0.0)) throw DomainError("pow", base);
  return std::exp(expo * std::log(base));
}

Jet2 pow_general(const Jet2& base, const Jet2& expo) { return pow(base, expo); }

bool integral_exponent(double v, long long& out) {
  if (!std::isfinite(v) || std::floor(v) != v || std::abs(v) > 1e9) return false;
  out = static_cast<long long>(v);
  return true;
}

}  // namespace

// --- parser ----------------------------------------------------------------

class ExprParser {
 public:
  ExprParser(std::string_view src, std::span<const std::string> vars)
      : src_(src), vars_(vars) {}

  Expr run() {
    Expr e;
    e.vars_.assign(vars_.begin(), vars_.end());
    nodes_ = &e.nodes_;
    pos_ = 0;
    const int root = parse_expr(0);
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError("unexpected trailing input", pos_);
    e.root_ = root;
    return e;
  }

 private:
  int add(Expr::Node n) {
    nodes_->push_back(n);
    return static_cast<int>(nodes_->size()) - 1;
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  // binding powers: + - (1,2); * / (3,4); unary - operand at 6; ^ (8,7)
  int parse_expr(int min_bp) {
    int lhs = parse_prefix();
    for (;;) {
      const char c = peek();
      BinOp op;
      int lbp, rbp;
      switch (c) {
        case '+': op = BinOp::Add; lbp = 1; rbp = 2; break;
        case '-': op = BinOp::Sub; lbp = 1; rbp = 2; break;
        case '*': op = BinOp::Mul; lbp = 3; rbp = 4; break;
        case '/': op = BinOp::Div; lbp = 3; rbp = 4; break;
        case '^': op = BinOp::Pow; lbp = 8; rbp = 7; break;
        default: return lhs;
      }
      if (lbp < min_bp) return lhs;
      ++pos_;
      const int rhs = parse_expr(rbp);
      Expr::Node n;
      n.kind = Expr::Node::Kind::Binary;
      n.op = op;
      n.a = lhs;
      n.b = rhs;
      lhs = add(n);
    }
  }

  int parse_prefix() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      const int operand = parse_expr(6);
      Expr::Node n;
      n.kind = Expr::Node::Kind::Unary;
      n.fn = UnFn::Neg;
      n.a = operand;
      return add(n);
    }
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr(0);
      if (peek() != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw SyntaxError("unexpected token", pos_);
  }

  int parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw SyntaxError("expected digit after '.'", pos_);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw SyntaxError("expected digit in exponent", mark + 1);
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    double value = 0;
    const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc{}) throw SyntaxError("bad number literal", start);
    Expr::Node n;
    n.kind = Expr::Node::Kind::Number;
    n.number = value;
    return add(n);
  }

  int parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);
    if (id == "pi") {
      Expr::Node n;
      n.kind = Expr::Node::Kind::Number;
      n.number = kPi;
      return add(n);
    }
    if (auto fn = lookup_function(id)) {
      if (peek() != '(') throw SyntaxError("expected '(' after function name", pos_);
      ++pos_;
      const int arg = parse_expr(0);
      if (peek() != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      Expr::Node n;
      n.kind = Expr::Node::Kind::Unary;
      n.fn = *fn;
      n.a = arg;
      return add(n);
    }
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (vars_[v] == id) {
        Expr::Node n;
        n.kind = Expr::Node::Kind::Variable;
        n.var = static_cast<int>(v);
        return add(n);
      }
    }
    throw UnknownIdentifier(std::string(id), start);
  }

  std::string_view src_;
  std::span<const std::string> vars_;
  std::vector<Expr::Node>* nodes_ = nullptr;
  std::size_t pos_ = 0;
};

Expr Expr::parse(std::string_view src, std::span<const std::string> vars) {
  std::size_t ws = 0;
  while (ws < src.size() && (src[ws] == ' ' || src[ws] == '\t')) ++ws;
  if (ws == src.size()) throw SyntaxError("empty expression", 0);
  for (const auto& v : vars)
    if (v == "pi" || lookup_function(v))
      throw InvalidArgument("variable name collides with reserved identifier: " + v);
  return ExprParser(src, vars).run();
}

template <class T>
T Expr::eval_node(int idx, std::span<const T> args) const {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case Node::Kind::Number:
      if constexpr (std::is_same_v<T, Jet2>) {
        return Jet2::constant(n.number, args.empty() ? 0 : args[0].dim());
      } else {
        return n.number;
      }
    case Node::Kind::Variable:
      return args[static_cast<std::size_t>(n.var)];
    case Node::Kind::Unary:
      return apply_fn(n.fn, eval_node<T>(n.a, args));
    case Node::Kind::Binary: {
      if (n.op == BinOp::Pow) {
        const Node& e = nodes_[static_cast<std::size_t>(n.b)];
        long long k = 0;
        if (e.kind == Node::Kind::Number && integral_exponent(e.number, k))
          return pow_int(eval_node<T>(n.a, args), k);
        return pow_general(eval_node<T>(n.a, args), eval_node<T>(n.b, args));
      }
      T a = eval_node<T>(n.a, args);
      T b = eval_node<T>(n.b, args);
      switch (n.op) {
        case BinOp::Add: return a + b;
        case BinOp::Sub: return a - b;
        case BinOp::Mul: return a * b;
        case BinOp::Div:
          if constexpr (std::is_same_v<T, double>) {
            if (b == 0.0) throw DomainError("div", 0.0);
          }
          return a / b;
        case BinOp::Pow: break;
      }
      break;
    }
  }
  throw InvalidArgument("bad expression node");
}

double Expr::eval(std::span<const double> values) const {
  if (values.size() != vars_.size())
    throw InvalidArgument("expression arity mismatch");
  return eval_node<double>(root_, values);
}

Jet2 Expr::eval_jet(std::span<const double> point) const {
  if (point.size() != vars_.size())
    throw InvalidArgument("expression arity mismatch");
  if (point.size() > Jet2::kMaxDim)
    throw InvalidArgument("too many variables for second-order jets");
  const int n = static_cast<int>(point.size());
  std::array<Jet2, Jet2::kMaxDim> seeds;
  for (int i = 0; i < n; ++i) seeds[i] = Jet2::variable(point[i], i, n);
  if (n == 0) {
    const Jet2 none[1] = {Jet2::constant(0, 0)};
    return eval_node<Jet2>(root_, std::span<const Jet2>(none, 0));
  }
  return eval_node<Jet2>(root_, std::span<const Jet2>(seeds.data(), static_cast<std::size_t>(n)));
}

Jet2 Expr::eval_jet(std::span<const Jet2> args) const {
  if (args.size() != vars_.size())
    throw InvalidArgument("expression arity mismatch");
  return eval_node<Jet2>(root_, args);
}

// --- printing ---------------------------------------------------------------

namespace {

// operator precedence for the printer; higher binds tighter
int prec(const Expr::Node& n) {
  if (n.kind != Expr::Node::Kind::Binary) {
    if (n.kind == Expr::Node::Kind::Unary && n.fn == UnFn::Neg) return 2;
    return 100;
  }
  switch (n.op) {
    case BinOp::Add:
    case BinOp::Sub: return 1;
    case BinOp::Mul:
    case BinOp::Div: return 3;
    case BinOp::Pow: return 4;
  }
  return 100;
}

std::string number_str(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string Expr::str() const {
  // renders node `idx`, parenthesizing children whose precedence is too low
  auto render = [&](auto&& self, int idx) -> std::string {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.kind) {
      case Node::Kind::Number: return number_str(n.number);
      case Node::Kind::Variable: return vars_[static_cast<std::size_t>(n.var)];
      case Node::Kind::Unary: {
        if (n.fn == UnFn::Neg) {
          const Node& c = nodes_[static_cast<std::size_t>(n.a)];
          std::string inner = self(self, n.a);
          // unary minus binds looser than ^ * /, tighter than + -
          if (prec(c) <= 3) return "-(" + inner + ")";
          return "-" + inner;
        }
        return std::string(function_name(n.fn)) + "(" + self(self, n.a) + ")";
      }
      case Node::Kind::Binary: {
        const int p = prec(n);
        const Node& ca = nodes_[static_cast<std::size_t>(n.a)];
        const Node& cb = nodes_[static_cast<std::size_t>(n.b)];
        std::string a = self(self, n.a);
        std::string b = self(self, n.b);
        const bool right_assoc = n.op == BinOp::Pow;
        if (prec(ca) < p || (right_assoc && prec(ca) == p)) a = "(" + a + ")";
        if (prec(cb) < p || (!right_assoc && prec(cb) == p)) b = "(" + b + ")";
        const char* op = n.op == BinOp::Add   ? " + "
                         : n.op == BinOp::Sub ? " - "
                         : n.op == BinOp::Mul ? "*"
                         : n.op == BinOp::Div ? "/"
                                              : "^";
        return a + op + b;
      }
    }
    return "?";
  };
  return render(render, root_);
}

bool Expr::same_structure(const Expr& other) const {
  auto eq = [&](auto&& self, int ia, int ib) -> bool {
    const Node& a = nodes_[static_cast<std::size_t>(ia)];
    const Node& b = other.nodes_[static_cast<std::size_t>(ib)];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Node::Kind::Number: return a.number == b.number;
      case Node::Kind::Variable: return a.var == b.var;
      case Node::Kind::Unary: return a.fn == b.fn && self(self, a.a, b.a);
      case Node::Kind::Binary:
        return a.op == b.op && self(self, a.a, b.a) && self(self, a.b, b.b);
    }
    return false;
  };
  if (root_ < 0 || other.root_ < 0) return root_ == other.root_;
  return eq(eq, root_, other.root_);
}

}  // namespace metrize
