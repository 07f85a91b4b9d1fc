//
// Copyright (c) 2026 The aseo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "aseo/parser.hpp"

#include "aseo/semantics.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace aseo {

ParseError::ParseError(std::size_t line, std::size_t column, std::string message, std::string snippet)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                         (snippet.empty() ? std::string() : " near '" + snippet + "'")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      snippet_(std::move(snippet)) {}

namespace {

enum class Tok {
    Ident,
    Not,
    Int,
    If,  // :-
    Dot,
    Comma,
    Semi,
    Colon,
    At,
    LBrace,
    RBrace,
    Sum,
    Minimize,
    Maximize,
    Rel,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            // Keep EOF positions inside the text.
            t.line = last_line_;
            t.column = last_col_;
            return t;
        }
        char c = src_[pos_];
        auto single = [&](Tok k) {
            t.kind = k;
            t.text = std::string(1, c);
            advance();
            return t;
        };
        if (std::islower(static_cast<unsigned char>(c))) return ident(t);
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            t.kind = Tok::Int;
            t.text.push_back(c);
            advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                t.text.push_back(src_[pos_]);
                advance();
            }
            return t;
        }
        switch (c) {
            case '.': return single(Tok::Dot);
            case ',': return single(Tok::Comma);
            case ';': return single(Tok::Semi);
            case '@': return single(Tok::At);
            case '{': return single(Tok::LBrace);
            case '}': return single(Tok::RBrace);
            case ':':
                if (peek(1) == '-') return multi(t, Tok::If, 2);
                return single(Tok::Colon);
            case '<':
            case '>':
                if (peek(1) == '=') return multi(t, Tok::Rel, 2);
                return multi(t, Tok::Rel, 1);
            case '=': return multi(t, Tok::Rel, 1);
            case '!':
                if (peek(1) == '=') return multi(t, Tok::Rel, 2);
                break;
            case '#': {
                std::size_t end = pos_ + 1;
                while (end < src_.size() && std::isalpha(static_cast<unsigned char>(src_[end]))) ++end;
                auto word = src_.substr(pos_, end - pos_);
                if (word == "#sum") return multi(t, Tok::Sum, word.size());
                if (word == "#minimize") return multi(t, Tok::Minimize, word.size());
                if (word == "#maximize") return multi(t, Tok::Maximize, word.size());
                throw ParseError(t.line, t.column, "unknown directive", std::string(word));
            }
            default: break;
        }
        throw ParseError(t.line, t.column, "unexpected character", std::string(1, c));
    }

private:
    char peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void advance() {
        last_line_ = line_;
        last_col_ = col_;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token multi(Token& t, Tok kind, std::size_t len) {
        t.kind = kind;
        t.text = std::string(src_.substr(pos_, len));
        for (std::size_t i = 0; i < len; ++i) advance();
        return t;
    }

    Token ident(Token& t) {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') break;
            t.text.push_back(c);
            advance();
        }
        if (t.text == "not") {
            t.kind = Tok::Not;
            return t;
        }
        t.kind = Tok::Ident;
        if (pos_ < src_.size() && src_[pos_] == '(') {
            int depth = 0;
            while (pos_ < src_.size()) {
                char c = src_[pos_];
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (!std::isspace(static_cast<unsigned char>(c))) t.text.push_back(c);
                advance();
                if (depth == 0) break;
            }
            if (depth != 0) throw ParseError(t.line, t.column, "unbalanced parentheses in atom", t.text);
        }
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::size_t last_line_ = 1;
    std::size_t last_col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { shift(); }

    Program run() {
        while (cur_.kind != Tok::End) statement();
        return finish();
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, cur_.column, msg, cur_.text); }

    void shift() { cur_ = lex_.next(); }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what);
        Token t = cur_;
        shift();
        return t;
    }

    Weight integer(const Token& t) const {
        Weight v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec == std::errc::result_out_of_range)
            throw ParseError(t.line, t.column, "integer overflows 64-bit weight", t.text);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size())
            throw ParseError(t.line, t.column, "malformed integer", t.text);
        return v;
    }

    Weight expect_int(const char* what) { return integer(expect(Tok::Int, what)); }

    Literal literal() {
        bool positive = true;
        if (cur_.kind == Tok::Not) {
            positive = false;
            shift();
        }
        auto t = expect(Tok::Ident, "atom");
        return {program_.atom(t.text), positive};
    }

    void statement() {
        switch (cur_.kind) {
            case Tok::If: {
                shift();
                Rule r;
                body(r);
                expect(Tok::Dot, "'.'");
                program_.add_rule(std::move(r));
                return;
            }
            case Tok::Minimize:
            case Tok::Maximize: objective(); return;
            case Tok::Ident: {
                Rule r;
                r.head = program_.atom(cur_.text);
                shift();
                if (cur_.kind == Tok::If) {
                    shift();
                    body(r);
                }
                expect(Tok::Dot, "'.'");
                program_.add_rule(std::move(r));
                return;
            }
            default: fail("expected rule, constraint or directive");
        }
    }

    void body(Rule& r) {
        for (;;) {
            if (cur_.kind == Tok::Sum) {
                if (r.sum_body) fail("at most one #sum condition per body");
                r.sum_body = sum_condition();
            } else {
                auto l = literal();
                (l.positive() ? r.pos_body : r.neg_body).push_back(l.atom());
            }
            if (cur_.kind != Tok::Comma) break;
            shift();
        }
    }

    SumCondition sum_condition() {
        shift();
        expect(Tok::LBrace, "'{'");
        SumCondition c;
        for (;;) {
            Weight w = expect_int("weight");
            expect(Tok::Colon, "':'");
            c.terms.push_back({w, literal()});
            if (cur_.kind != Tok::Semi) break;
            shift();
        }
        expect(Tok::RBrace, "'}'");
        auto rel = expect(Tok::Rel, "relation");
        if (rel.text == "<=") c.relation = Relation::LE;
        else if (rel.text == "<") c.relation = Relation::LT;
        else if (rel.text == ">=") c.relation = Relation::GE;
        else if (rel.text == ">") c.relation = Relation::GT;
        else if (rel.text == "=") c.relation = Relation::EQ;
        else c.relation = Relation::NE;
        c.bound = expect_int("bound");
        return c;
    }

    void objective() {
        bool maximize = cur_.kind == Tok::Maximize;
        Token directive = cur_;
        shift();
        expect(Tok::LBrace, "'{'");
        std::map<int, ObjectiveFunction> local;
        for (;;) {
            Token wt = expect(Tok::Int, "weight");
            Weight w = integer(wt);
            expect(Tok::At, "'@'");
            Token lt = expect(Tok::Int, "priority level");
            Weight level = integer(lt);
            if (level < 1 || level > 1'000'000)
                throw ParseError(lt.line, lt.column, "priority level must be a positive integer", lt.text);
            expect(Tok::Colon, "':'");
            auto& f = local[static_cast<int>(level)];
            f.level = static_cast<int>(level);
            f.maximize = maximize;
            f.terms.push_back({w, literal()});
            if (cur_.kind != Tok::Semi) break;
            shift();
        }
        expect(Tok::RBrace, "'}'");
        expect(Tok::Dot, "'.'");
        for (auto& [level, f] : local) {
            if (objectives_.count(level))
                throw ParseError(directive.line, directive.column,
                                 "priority level " + std::to_string(level) + " already defined by another statement",
                                 directive.text);
            objectives_.emplace(level, std::move(f));
        }
        last_directive_ = directive;
    }

    Program finish() {
        int expected = 1;
        for (auto& [level, f] : objectives_) {
            if (level != expected)
                throw ParseError(last_directive_.line, last_directive_.column,
                                 "priority levels must be contiguous from 1; missing level " + std::to_string(expected),
                                 last_directive_.text);
            program_.objectives.push_back(std::move(f));
            ++expected;
        }
        try {
            return normalize_objectives(std::move(program_));
        } catch (const std::overflow_error& e) {
            throw ParseError(last_directive_.line, last_directive_.column, e.what(), last_directive_.text);
        }
    }

    Lexer lex_;
    Token cur_;
    Token last_directive_;
    Program program_;
    std::map<int, ObjectiveFunction> objectives_;
};

void render_literal(std::ostream& os, const Program& p, Literal l) {
    if (!l.positive()) os << "not ";
    os << p.atoms.name(l.atom());
}

}  // namespace

Program parse_program(std::string_view source) { return Parser(source).run(); }

std::string render_program(const Program& program) {
    std::ostringstream os;
    for (const auto& r : program.rules) {
        if (r.head) os << program.atoms.name(*r.head);
        bool has_body = !r.pos_body.empty() || !r.neg_body.empty() || r.sum_body;
        if (has_body || !r.head) os << (r.head ? " :- " : ":- ");
        const char* sep = "";
        for (auto a : r.pos_body) {
            os << sep << program.atoms.name(a);
            sep = ", ";
        }
        for (auto a : r.neg_body) {
            os << sep << "not " << program.atoms.name(a);
            sep = ", ";
        }
        if (r.sum_body) {
            os << sep << "#sum{";
            for (std::size_t i = 0; i < r.sum_body->terms.size(); ++i) {
                const auto& t = r.sum_body->terms[i];
                os << (i ? "; " : "") << t.weight << ":";
                render_literal(os, program, t.lit);
            }
            os << "} " << to_string(r.sum_body->relation) << " " << r.sum_body->bound;
        }
        os << ".\n";
    }
    for (const auto& f : program.objectives) {
        if (f.offset != 0) os << "% offset@" << f.level << ": " << f.offset << "\n";
        if (f.terms.empty()) continue;
        os << (f.maximize ? "#maximize{" : "#minimize{");
        for (std::size_t i = 0; i < f.terms.size(); ++i) {
            const auto& t = f.terms[i];
            os << (i ? "; " : "") << t.weight << "@" << f.level << ":";
            render_literal(os, program, t.lit);
        }
        os << "}.\n";
    }
    return os.str();
}

}  // namespace aseo
