#include "genrank/dsl.hpp"

#include <cctype>
#include <sstream>

namespace genrank {

namespace {

constexpr int kMaxDepth = 512;

struct Token {
    enum Kind { Ident, Int, LParen, RParen, Comma, Equals, End } kind = End;
    std::string text;
    long value = 0;
    int line = 1;
    int column = 1;
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    std::ostringstream os;
    os << "description error at " << t.line << ":" << t.column << ": " << msg;
    throw MalformedDescription(os.str(), t.line, t.column);
}

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { next(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        next();
        return t;
    }

  private:
    void next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            if (s_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.column = col_;
        if (i_ >= s_.size()) {
            tok_.kind = Token::End;
            tok_.text = "end of input";
            return;
        }
        char c = s_[i_];
        if (c == '(' || c == ')' || c == ',' || c == '=') {
            tok_.kind = c == '(' ? Token::LParen
                        : c == ')' ? Token::RParen
                        : c == ',' ? Token::Comma
                                   : Token::Equals;
            tok_.text = std::string(1, c);
            ++i_;
            ++col_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Int;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                tok_.text += s_[i_];
                ++i_;
                ++col_;
            }
            if (tok_.text.size() > 9) fail(tok_, "number too large");
            tok_.value = std::stol(tok_.text);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.kind = Token::Ident;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
                tok_.text += s_[i_];
                ++i_;
                ++col_;
            }
            return;
        }
        tok_.text = std::string(1, c);
        fail(tok_, "unexpected character '" + tok_.text + "'");
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    AlgDesc parse() {
        AlgDesc a = expr(0);
        if (lex_.peek().kind != Token::End) fail(lex_.peek(), "unexpected trailing input");
        return a;
    }

  private:
    Token expect(Token::Kind k, const char* what) {
        if (lex_.peek().kind != k)
            fail(lex_.peek(), std::string("expected ") + what + ", found '" +
                                  lex_.peek().text + "'");
        return lex_.take();
    }

    long expect_int(long min, const char* what) {
        Token t = expect(Token::Int, what);
        if (t.value < min)
            fail(t, std::string(what) + " must be >= " + std::to_string(min));
        return t.value;
    }

    // 'dim' '=' (INT | inf)
    ExtInt dim_clause() {
        Token d = expect(Token::Ident, "'dim'");
        if (d.text != "dim") fail(d, "expected 'dim'");
        expect(Token::Equals, "'='");
        if (lex_.peek().kind == Token::Int) return ExtInt::of(lex_.take().value);
        Token t = expect(Token::Ident, "a dimension (integer or inf)");
        if (t.text != "inf") fail(t, "expected a dimension (integer or inf)");
        return ExtInt::inf();
    }

    AlgDesc expr(int depth) {
        if (depth > kMaxDepth) fail(lex_.peek(), "nesting too deep");
        Token t = expect(Token::Ident, "an algebra description");
        if (t.text == "af") return AlgDesc::af();
        if (t.text == "ah_slow") return AlgDesc::ah_simple_slow_growth();
        if (t.text == "matrix") {
            expect(Token::LParen, "'('");
            long n = expect_int(1, "matrix size");
            expect(Token::RParen, "')'");
            return AlgDesc::matrix(static_cast<int>(n));
        }
        if (t.text == "findim") {
            expect(Token::LParen, "'('");
            std::vector<int> dims;
            dims.push_back(static_cast<int>(expect_int(1, "block size")));
            while (lex_.peek().kind == Token::Comma) {
                lex_.take();
                dims.push_back(static_cast<int>(expect_int(1, "block size")));
            }
            expect(Token::RParen, "')'");
            return AlgDesc::finite_dim(std::move(dims));
        }
        if (t.text == "commutative") {
            expect(Token::LParen, "'('");
            ExtInt d = dim_clause();
            SpaceClass cls = SpaceClass::Unknown;
            if (lex_.peek().kind == Token::Comma) {
                lex_.take();
                Token c = expect(Token::Ident, "a space class");
                if (c.text == "basic")
                    cls = SpaceClass::Basic;
                else if (c.text == "exceptional")
                    cls = SpaceClass::Exceptional;
                else if (c.text == "unknown")
                    cls = SpaceClass::Unknown;
                else
                    fail(c, "expected basic, exceptional or unknown");
            }
            expect(Token::RParen, "')'");
            return AlgDesc::commutative(d, cls);
        }
        if (t.text == "hom") {
            expect(Token::LParen, "'('");
            long n = expect_int(2, "fiber size");
            expect(Token::Comma, "','");
            ExtInt d = dim_clause();
            expect(Token::RParen, "')'");
            return AlgDesc::homogeneous(static_cast<int>(n), d);
        }
        if (t.text == "sum") {
            expect(Token::LParen, "'('");
            std::vector<AlgDesc> parts;
            parts.push_back(expr(depth + 1));
            while (lex_.peek().kind == Token::Comma) {
                lex_.take();
                parts.push_back(expr(depth + 1));
            }
            expect(Token::RParen, "')'");
            return AlgDesc::direct_sum(std::move(parts));
        }
        if (t.text == "ext") {
            expect(Token::LParen, "'('");
            AlgDesc ideal = expr(depth + 1);
            expect(Token::Comma, "','");
            AlgDesc quotient = expr(depth + 1);
            expect(Token::RParen, "')'");
            return AlgDesc::extension(std::move(ideal), std::move(quotient));
        }
        if (t.text == "tensor_mn") {
            expect(Token::LParen, "'('");
            AlgDesc child = expr(depth + 1);
            expect(Token::Comma, "','");
            long n = expect_int(2, "matrix size");
            bool rr0 = false, sr1 = false, unital = false;
            while (lex_.peek().kind == Token::Comma) {
                lex_.take();
                Token f = expect(Token::Ident, "a flag (rr0, sr1 or unital)");
                bool dup = false;
                if (f.text == "rr0") {
                    dup = rr0;
                    rr0 = true;
                } else if (f.text == "sr1") {
                    dup = sr1;
                    sr1 = true;
                } else if (f.text == "unital") {
                    dup = unital;
                    unital = true;
                } else {
                    fail(f, "expected rr0, sr1 or unital");
                }
                if (dup) fail(f, "duplicate flag '" + f.text + "'");
            }
            expect(Token::RParen, "')'");
            return AlgDesc::tensor_mn(std::move(child), static_cast<int>(n), rr0, sr1,
                                      unital);
        }
        if (t.text == "limit") {
            expect(Token::LParen, "'('");
            std::vector<AlgDesc> blocks;
            bool repeats = false;
            blocks.push_back(expr(depth + 1));
            while (lex_.peek().kind == Token::Comma) {
                lex_.take();
                if (lex_.peek().kind == Token::Ident && lex_.peek().text == "repeats") {
                    lex_.take();
                    repeats = true;
                    break;
                }
                blocks.push_back(expr(depth + 1));
            }
            expect(Token::RParen, "')'");
            return AlgDesc::inductive_limit(std::move(blocks), repeats);
        }
        if (t.text == "uhf_rr0" || t.text == "ideal" || t.text == "quotient") {
            expect(Token::LParen, "'('");
            AlgDesc child = expr(depth + 1);
            expect(Token::RParen, "')'");
            if (t.text == "uhf_rr0") return AlgDesc::uhf_absorbing_rr0(std::move(child));
            if (t.text == "ideal") return AlgDesc::ideal_of(std::move(child));
            return AlgDesc::quotient_of(std::move(child));
        }
        fail(t, "unknown algebra constructor '" + t.text + "'");
    }

    Lexer lex_;
};

void format(const AlgDesc& a, std::ostringstream& os) {
    switch (a.kind) {
        case AlgKind::Commutative:
            os << "commutative(dim=" << to_string(a.dim_x);
            if (a.space_class == SpaceClass::Basic) os << ", basic";
            if (a.space_class == SpaceClass::Exceptional) os << ", exceptional";
            os << ")";
            return;
        case AlgKind::Matrix:
            os << "matrix(" << a.n << ")";
            return;
        case AlgKind::FiniteDim:
            os << "findim(";
            for (std::size_t i = 0; i < a.dims.size(); ++i)
                os << (i ? "," : "") << a.dims[i];
            os << ")";
            return;
        case AlgKind::Homogeneous:
            os << "hom(" << a.n << ", dim=" << to_string(a.dim_x) << ")";
            return;
        case AlgKind::DirectSum:
        case AlgKind::InductiveLimit: {
            os << (a.kind == AlgKind::DirectSum ? "sum(" : "limit(");
            for (std::size_t i = 0; i < a.children.size(); ++i) {
                if (i) os << ", ";
                format(a.children[i], os);
            }
            if (a.kind == AlgKind::InductiveLimit && a.repeats) os << ", repeats";
            os << ")";
            return;
        }
        case AlgKind::Extension:
            os << "ext(";
            format(a.children[0], os);
            os << ", ";
            format(a.children[1], os);
            os << ")";
            return;
        case AlgKind::TensorMn:
            os << "tensor_mn(";
            format(a.children[0], os);
            os << ", " << a.n;
            if (a.rr0) os << ", rr0";
            if (a.sr1) os << ", sr1";
            if (a.unital) os << ", unital";
            os << ")";
            return;
        case AlgKind::AF:
            os << "af";
            return;
        case AlgKind::UhfAbsorbingRr0:
            os << "uhf_rr0(";
            format(a.children[0], os);
            os << ")";
            return;
        case AlgKind::AhSimpleSlowGrowth:
            os << "ah_slow";
            return;
        case AlgKind::Ideal:
        case AlgKind::Quotient:
            os << (a.kind == AlgKind::Ideal ? "ideal(" : "quotient(");
            format(a.children[0], os);
            os << ")";
            return;
    }
}

}  // namespace

AlgDesc parse_algebra(const std::string& text) { return Parser(text).parse(); }

std::string format_algebra(const AlgDesc& a) {
    std::ostringstream os;
    format(a, os);
    return os.str();
}

}  // namespace genrank
