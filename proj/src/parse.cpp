#include "ldg/parse.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ldg/errors.hpp"

namespace ldg {

namespace {

enum class Tok {
    End, Ident, Number, String,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semi, Dot, Colon, Star, Plus, Question, Bang, Minus, Arrow,
    Lt, Gt, Le, Ge, Eq, Neq, Implies, Redirect,
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }
    bool at(Tok k) const { return cur_.kind == k; }
    bool at_word(const char* w) const { return cur_.kind == Tok::Ident && cur_.text == w; }
    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return take();
    }
    void expect_word(const char* w) {
        if (!at_word(w)) fail(std::string("expected '") + w + "'");
        take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg + " (found '" + cur_.text + "')", cur_.line, cur_.col);
    }

private:
    void advance() {
        skip_space();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_ = {Tok::End, "<end>", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_' ||
                    src_[pos_] == '\''))
                bump();
            cur_ = {Tok::Ident, src_.substr(start, pos_ - start), cur_.line, cur_.col};
            return;
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) bump();
            cur_ = {Tok::Number, src_.substr(start, pos_ - start), cur_.line, cur_.col};
            return;
        }
        if (c == '"') {
            bump();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') bump();
            if (pos_ >= src_.size())
                throw SyntaxError("unterminated string", cur_.line, cur_.col);
            cur_ = {Tok::String, src_.substr(start, pos_ - start), cur_.line, cur_.col};
            bump();
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two('>', '>')) { sym(Tok::Redirect, ">>"); return; }
        if (two('>', '=')) { sym(Tok::Ge, ">="); return; }
        if (two('<', '=')) { sym(Tok::Le, "<="); return; }
        if (two('=', '>')) { sym(Tok::Implies, "=>"); return; }
        if (two('!', '=')) { sym(Tok::Neq, "!="); return; }
        if (two('-', '>')) { sym(Tok::Arrow, "->"); return; }
        switch (c) {
            case '(': sym1(Tok::LParen); return;
            case ')': sym1(Tok::RParen); return;
            case '{': sym1(Tok::LBrace); return;
            case '}': sym1(Tok::RBrace); return;
            case '[': sym1(Tok::LBracket); return;
            case ']': sym1(Tok::RBracket); return;
            case ',': sym1(Tok::Comma); return;
            case ';': sym1(Tok::Semi); return;
            case '.': sym1(Tok::Dot); return;
            case ':': sym1(Tok::Colon); return;
            case '*': sym1(Tok::Star); return;
            case '+': sym1(Tok::Plus); return;
            case '?': sym1(Tok::Question); return;
            case '!': sym1(Tok::Bang); return;
            case '-': sym1(Tok::Minus); return;
            case '<': sym1(Tok::Lt); return;
            case '>': sym1(Tok::Gt); return;
            case '=': sym1(Tok::Eq); return;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace((unsigned char)c)) {
                bump();
            } else {
                break;
            }
        }
    }
    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void sym1(Tok k) {
        cur_ = {k, std::string(1, src_[pos_]), cur_.line, cur_.col};
        bump();
    }
    void sym(Tok k, const char* text) {
        cur_ = {k, text, cur_.line, cur_.col};
        bump();
        bump();
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token cur_{Tok::End, "", 1, 1};
};

// ---------------------------------------------------------------- actions

std::set<std::string> parse_role_set(Lexer& lx) {
    std::set<std::string> out;
    lx.expect(Tok::LBrace, "'{'");
    while (!lx.at(Tok::RBrace)) {
        out.insert(lx.expect(Tok::Ident, "role name").text);
        if (lx.at(Tok::Comma)) lx.take();
    }
    lx.take();
    return out;
}

Action parse_action_tokens(Lexer& lx) {
    if (lx.at(Tok::Ident)) {
        const std::string head = lx.peek().text;
        auto args_open = [&]() {
            lx.take();
            lx.expect(Tok::LParen, "'('");
        };
        auto ident = [&]() { return lx.expect(Tok::Ident, "name").text; };
        auto comma = [&]() { lx.expect(Tok::Comma, "','"); };
        auto close = [&]() { lx.expect(Tok::RParen, "')'"); };
        if (head == "add_N" || head == "del_N") {
            args_open();
            NodeId i{ident()};
            close();
            return head == "add_N" ? Action::add_node(i) : Action::del_node(i);
        }
        if (head == "add_C" || head == "del_C") {
            args_open();
            NodeId i{ident()};
            comma();
            std::string c = ident();
            close();
            return head == "add_C" ? Action::add_label(i, c) : Action::del_label(i, c);
        }
        if (head == "add_E") {
            args_open();
            std::string first = ident();
            comma();
            std::string second = ident();
            if (lx.at(Tok::RParen)) lx.fail("add_E needs three or four arguments");
            comma();
            std::string third = ident();
            if (lx.at(Tok::RParen)) {
                lx.take();
                return Action::add_edge(NodeId{first}, NodeId{second}, third);
            }
            comma();
            std::string fourth = ident();
            close();
            return Action::add_edge_id(EdgeId{first}, NodeId{second}, NodeId{third}, fourth);
        }
        if (head == "del_E") {
            args_open();
            std::string first = ident();
            if (lx.at(Tok::RParen)) {
                lx.take();
                return Action::del_edge_id(EdgeId{first});
            }
            comma();
            std::string second = ident();
            comma();
            std::string third = ident();
            close();
            return Action::del_edge(NodeId{first}, NodeId{second}, third);
        }
        if (head == "mrg") {
            args_open();
            NodeId i{ident()};
            comma();
            NodeId j{ident()};
            close();
            return Action::merge(i, j);
        }
        if (head == "cl") {
            args_open();
            NodeId i{ident()};
            comma();
            NodeId j{ident()};
            comma();
            CloneParams p;
            p.in = parse_role_set(lx);
            comma();
            p.out = parse_role_set(lx);
            comma();
            p.loop_in = parse_role_set(lx);
            comma();
            p.loop_out = parse_role_set(lx);
            comma();
            p.loop_loop = parse_role_set(lx);
            close();
            return Action::clone_node(i, j, p);
        }
        // redirect: i >> j
        NodeId i{lx.take().text};
        lx.expect(Tok::Redirect, "'>>'");
        NodeId j{lx.expect(Tok::Ident, "node name").text};
        return Action::redirect(i, j);
    }
    lx.fail("expected an action");
}

ActionSeq parse_actions_tokens(Lexer& lx) {
    ActionSeq out;
    if (lx.at(Tok::End) || lx.at(Tok::RBrace) || lx.at(Tok::RBracket)) return out;
    out.push_back(parse_action_tokens(lx));
    while (lx.at(Tok::Semi)) {
        lx.take();
        if (lx.at(Tok::End) || lx.at(Tok::RBrace) || lx.at(Tok::RBracket)) break;
        out.push_back(parse_action_tokens(lx));
    }
    return out;
}

// ---------------------------------------------------------------- concepts

Role parse_role_tok(Lexer& lx) {
    if (lx.at_word("U")) {
        lx.take();
        return Role::universal();
    }
    if (lx.at_word("inv")) {
        lx.take();
        return Role::inverse(lx.expect(Tok::Ident, "role name").text);
    }
    return Role::basic(lx.expect(Tok::Ident, "role name").text);
}

ConceptPtr parse_c_impl(Lexer& lx);

ConceptPtr apply_subst_suffixes(Lexer& lx, ConceptPtr c) {
    while (lx.at(Tok::LBracket)) {
        lx.take();
        ActionSeq alpha = parse_actions_tokens(lx);
        lx.expect(Tok::RBracket, "']'");
        // phi[a1; a2] abbreviates (phi[a2])[a1]
        for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) c = c_subst(c, *it);
    }
    return c;
}

ConceptPtr parse_c_unary(Lexer& lx) {
    if (lx.at_word("not")) {
        lx.take();
        return c_not(parse_c_unary(lx));
    }
    if (lx.at_word("exists") || lx.at_word("forall")) {
        bool is_exists = lx.take().text == "exists";
        Role r = parse_role_tok(lx);
        lx.expect(Tok::Dot, "'.'");
        if (is_exists && lx.at_word("Self")) {
            lx.take();
            return apply_subst_suffixes(lx, c_exists_self(r));
        }
        ConceptPtr body = parse_c_unary(lx);
        return is_exists ? c_exists(r, body) : c_forall(r, body);
    }
    // primary
    ConceptPtr c;
    if (lx.at(Tok::LBrace)) {
        lx.take();
        c = c_nominal(NodeId{lx.expect(Tok::Ident, "node name").text});
        lx.expect(Tok::RBrace, "'}'");
    } else if (lx.at(Tok::LParen)) {
        lx.take();
        if (lx.at(Tok::Lt) || lx.at(Tok::Le) || lx.at(Tok::Ge) || lx.at(Tok::Gt)) {
            Tok cmp = lx.take().kind;
            int n = std::stoi(lx.expect(Tok::Number, "bound").text);
            Role r = parse_role_tok(lx);
            ConceptPtr body = parse_c_impl(lx);
            lx.expect(Tok::RParen, "')'");
            switch (cmp) {
                case Tok::Lt: c = c_less(n, r, body); break;
                case Tok::Le: c = c_less(n + 1, r, body); break;
                case Tok::Ge: c = c_at_least(n, r, body); break;
                default: c = c_at_least(n + 1, r, body); break;
            }
        } else {
            c = parse_c_impl(lx);
            lx.expect(Tok::RParen, "')'");
        }
    } else if (lx.at_word("top")) {
        lx.take();
        c = c_top();
    } else if (lx.at_word("bot")) {
        lx.take();
        c = c_bot();
    } else if (lx.at_word("Active")) {
        lx.take();
        c = c_active();
    } else if (lx.at(Tok::Ident)) {
        c = c_atomic(lx.take().text);
    } else {
        lx.fail("expected a concept");
    }
    return apply_subst_suffixes(lx, c);
}

ConceptPtr parse_c_and(Lexer& lx) {
    ConceptPtr c = parse_c_unary(lx);
    while (lx.at_word("and")) {
        lx.take();
        c = c_and(c, parse_c_unary(lx));
    }
    return c;
}

ConceptPtr parse_c_or(Lexer& lx) {
    ConceptPtr c = parse_c_and(lx);
    while (lx.at_word("or")) {
        lx.take();
        c = c_or(c, parse_c_and(lx));
    }
    return c;
}

ConceptPtr parse_c_impl(Lexer& lx) {
    ConceptPtr c = parse_c_or(lx);
    if (lx.at(Tok::Implies)) {
        lx.take();
        return c_implies(c, parse_c_impl(lx));
    }
    return c;
}

// ---------------------------------------------------------------- fol

class FolParser {
public:
    explicit FolParser(Lexer& lx) : lx_(lx) {}

    FolPtr impl() {
        FolPtr f = disj();
        if (lx_.at(Tok::Implies)) {
            lx_.take();
            return f_implies(f, impl());
        }
        return f;
    }

private:
    Term term() {
        std::string name = lx_.expect(Tok::Ident, "term").text;
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
            if (*it == name) return Term::variable(name);
        return Term::constant(NodeId{name});
    }

    FolPtr atom_tail(Term t) {
        if (lx_.at(Tok::Eq)) {
            lx_.take();
            return f_eq(t, term());
        }
        if (lx_.at(Tok::Neq)) {
            lx_.take();
            return f_neq(t, term());
        }
        lx_.fail("expected '=' or '!=' after a term");
    }

    FolPtr subst_suffixes(FolPtr f) {
        while (lx_.at(Tok::LBracket)) {
            lx_.take();
            ActionSeq alpha = parse_actions_tokens(lx_);
            lx_.expect(Tok::RBracket, "']'");
            for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) f = f_subst(f, *it);
        }
        return f;
    }

    FolPtr unary() {
        if (lx_.at_word("not")) {
            lx_.take();
            return f_not(unary());
        }
        if (lx_.at_word("exists") || lx_.at_word("forall")) {
            bool is_exists = lx_.take().text == "exists";
            std::string v = lx_.expect(Tok::Ident, "variable").text;
            lx_.expect(Tok::Dot, "'.'");
            bound_.push_back(v);
            FolPtr body = unary();
            bound_.pop_back();
            return is_exists ? f_exists(v, body) : f_forall(v, body);
        }
        FolPtr f;
        if (lx_.at(Tok::LParen)) {
            lx_.take();
            f = impl();
            lx_.expect(Tok::RParen, "')'");
        } else if (lx_.at_word("top")) {
            lx_.take();
            f = f_top();
        } else if (lx_.at_word("bot")) {
            lx_.take();
            f = f_bot();
        } else if (lx_.at(Tok::Ident)) {
            Token id = lx_.take();
            if (lx_.at(Tok::LParen)) {
                lx_.take();
                Term t1 = term();
                if (lx_.at(Tok::Comma)) {
                    lx_.take();
                    Term t2 = term();
                    lx_.expect(Tok::RParen, "')'");
                    f = f_role(id.text, t1, t2);
                } else {
                    lx_.expect(Tok::RParen, "')'");
                    f = id.text == "Active" ? f_active(t1) : f_concept(id.text, t1);
                }
            } else {
                bool is_bound = false;
                for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
                    if (*it == id.text) {
                        is_bound = true;
                        break;
                    }
                f = atom_tail(is_bound ? Term::variable(id.text)
                                       : Term::constant(NodeId{id.text}));
            }
        } else {
            lx_.fail("expected a formula");
        }
        return subst_suffixes(f);
    }

    FolPtr conj() {
        FolPtr f = unary();
        while (lx_.at_word("and")) {
            lx_.take();
            f = f_and(f, unary());
        }
        return f;
    }
    FolPtr disj() {
        FolPtr f = conj();
        while (lx_.at_word("or")) {
            lx_.take();
            f = f_or(f, conj());
        }
        return f;
    }

    Lexer& lx_;
    std::vector<std::string> bound_;
};

// ---------------------------------------------------------------- strategy

class StrategyParser {
public:
    StrategyParser(Lexer& lx, LogicKind inv_logic) : lx_(lx), logic_(inv_logic) {}

    StrategyPtr seq() {
        StrategyPtr s = choice();
        while (lx_.at(Tok::Semi)) {
            lx_.take();
            s = s_seq(s, choice());
        }
        return s;
    }

private:
    StrategyPtr choice() {
        StrategyPtr s = postfix();
        while (lx_.at(Tok::Plus)) {
            lx_.take();
            s = s_choice(s, postfix());
        }
        return s;
    }

    StrategyPtr postfix() {
        StrategyPtr s = primary();
        for (;;) {
            if (lx_.at(Tok::Star)) {
                lx_.take();
                ConceptPtr inv_dl;
                FolPtr inv_fol;
                if (lx_.at(Tok::LBrace)) {
                    lx_.take();
                    lx_.expect_word("inv");
                    lx_.expect(Tok::Colon, "':'");
                    if (logic_ == LogicKind::Dl) {
                        inv_dl = parse_c_impl(lx_);
                    } else {
                        FolParser fp(lx_);
                        inv_fol = fp.impl();
                    }
                    lx_.expect(Tok::RBrace, "'}'");
                }
                s = s_closure(s, inv_dl, inv_fol);
                continue;
            }
            if (lx_.at(Tok::Question) || lx_.at(Tok::Bang)) {
                if (s->kind != StrategyKind::Rule)
                    lx_.fail("'?' and '!' apply to rule names");
                bool q = lx_.take().kind == Tok::Question;
                s = q ? s_try(s->rule) : s_mandatory(s->rule);
                continue;
            }
            break;
        }
        return s;
    }

    StrategyPtr primary() {
        if (lx_.at(Tok::LParen)) {
            lx_.take();
            StrategyPtr s = seq();
            lx_.expect(Tok::RParen, "')'");
            return s;
        }
        if (lx_.at_word("eps")) {
            lx_.take();
            return s_eps();
        }
        return s_rule(lx_.expect(Tok::Ident, "rule name").text);
    }

    Lexer& lx_;
    LogicKind logic_;
};

// ---------------------------------------------------------------- rules

RuleSet parse_rules_tokens(Lexer& lx) {
    RuleSet out;
    while (lx.at_word("rule")) {
        lx.take();
        Rule r;
        r.name = lx.expect(Tok::Ident, "rule name").text;
        lx.expect(Tok::LBrace, "'{'");
        lx.expect_word("lhs");
        lx.expect(Tok::LBrace, "'{'");
        if (lx.at_word("nodes")) {
            lx.take();
            lx.expect(Tok::Colon, "':'");
            for (;;) {
                LhsNode n;
                n.name = lx.expect(Tok::Ident, "node name").text;
                if (lx.at(Tok::LBracket)) {
                    lx.take();
                    while (!lx.at(Tok::RBracket)) {
                        if (lx.at(Tok::String)) {
                            n.labels.push_back(parse_concept(lx.take().text));
                        } else {
                            n.labels.push_back(c_atomic(lx.expect(Tok::Ident, "label").text));
                        }
                        if (lx.at(Tok::Comma)) lx.take();
                    }
                    lx.take();
                }
                r.lhs.nodes.push_back(std::move(n));
                if (lx.at(Tok::Comma)) {
                    lx.take();
                    continue;
                }
                break;
            }
        }
        if (lx.at(Tok::Semi)) lx.take();
        if (lx.at_word("edges")) {
            lx.take();
            lx.expect(Tok::Colon, "':'");
            int k = 0;
            for (;;) {
                LhsEdge e;
                e.id = "e" + std::to_string(k++);
                e.src = lx.expect(Tok::Ident, "node name").text;
                lx.expect(Tok::Minus, "'-'");
                e.role = lx.expect(Tok::Ident, "role").text;
                lx.expect(Tok::Arrow, "'->'");
                e.tgt = lx.expect(Tok::Ident, "node name").text;
                r.lhs.edges.push_back(std::move(e));
                if (lx.at(Tok::Comma)) {
                    lx.take();
                    continue;
                }
                break;
            }
        }
        lx.expect(Tok::RBrace, "'}'");
        lx.expect_word("rhs");
        lx.expect(Tok::LBrace, "'{'");
        r.rhs = parse_actions_tokens(lx);
        lx.expect(Tok::RBrace, "'}'");
        lx.expect(Tok::RBrace, "'}'");
        r.validate();
        out.rules.push_back(std::move(r));
    }
    if (!lx.at(Tok::End)) lx.fail("expected 'rule' or end of file");
    return out;
}

void expect_end(Lexer& lx) {
    if (!lx.at(Tok::End)) lx.fail("trailing input");
}

}  // namespace

ConceptPtr parse_concept(const std::string& text) {
    Lexer lx(text);
    ConceptPtr c = parse_c_impl(lx);
    expect_end(lx);
    return c;
}

FolPtr parse_fol(const std::string& text) {
    Lexer lx(text);
    FolParser p(lx);
    FolPtr f = p.impl();
    expect_end(lx);
    return f;
}

Action parse_action(const std::string& text) {
    Lexer lx(text);
    Action a = parse_action_tokens(lx);
    expect_end(lx);
    return a;
}

ActionSeq parse_actions(const std::string& text) {
    Lexer lx(text);
    ActionSeq v = parse_actions_tokens(lx);
    expect_end(lx);
    return v;
}

StrategyPtr parse_strategy(const std::string& text, LogicKind inv_logic) {
    Lexer lx(text);
    StrategyParser p(lx, inv_logic);
    StrategyPtr s = p.seq();
    expect_end(lx);
    return s;
}

RuleSet parse_rules(const std::string& text) {
    Lexer lx(text);
    return parse_rules_tokens(lx);
}

Specification load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    Specification sp;
    bool have_logic = false, have_strategy = false, have_pre = false, have_post = false;
    std::string strategy_text, pre_text, post_text;

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        size_t colon = line.find(':');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (colon == std::string::npos)
            throw SyntaxError("expected 'key: value'", lineno, 1);
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = trim(key);
        value = trim(value);
        if (key == "logic") {
            if (value == "dl") sp.logic = LogicKind::Dl;
            else if (value == "fol") sp.logic = LogicKind::Fol;
            else throw SyntaxError("logic must be dl or fol", lineno, 1);
            have_logic = true;
        } else if (key == "rules") {
            std::filesystem::path rp = std::filesystem::path(path).parent_path() / value;
            std::ifstream rin(rp);
            if (!rin) throw Error("cannot open rules file: " + rp.string());
            std::stringstream rbuf;
            rbuf << rin.rdbuf();
            sp.rules = parse_rules(rbuf.str());
        } else if (key == "strategy") {
            strategy_text = value;
            have_strategy = true;
        } else if (key == "pre") {
            pre_text = value;
            have_pre = true;
        } else if (key == "post") {
            post_text = value;
            have_post = true;
        } else if (key == "bound") {
            size_t eq = value.find('=');
            if (eq == std::string::npos || value.substr(0, eq) != "nodes")
                throw SyntaxError("bound must be nodes=<k>", lineno, 1);
            sp.bound_nodes = std::stoi(value.substr(eq + 1));
        } else {
            throw SyntaxError("unknown key '" + key + "'", lineno, 1);
        }
    }
    if (!have_logic) throw Error("spec file misses logic:");
    if (!have_strategy) throw Error("spec file misses strategy:");
    if (!have_pre || !have_post) throw Error("spec file misses pre: or post:");
    sp.strategy = parse_strategy(strategy_text, sp.logic);
    if (sp.logic == LogicKind::Dl) {
        sp.pre = Formula::of(parse_concept(pre_text));
        sp.post = Formula::of(parse_concept(post_text));
    } else {
        sp.pre = Formula::of(parse_fol(pre_text));
        sp.post = Formula::of(parse_fol(post_text));
    }
    return sp;
}

}  // namespace ldg
