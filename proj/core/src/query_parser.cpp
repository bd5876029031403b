#include "restql/executor.hpp"

#include "gql_lexer.hpp"

namespace restql {

namespace {

using detail::Token;
using detail::TokenKind;

class RequestParser {
public:
    explicit RequestParser(const std::string& text) : tokens_(detail::lex_graphql(text)) {}

    RequestDoc run() {
        RequestDoc doc;
        if (peek().is_name("query") || peek().is_name("mutation")) {
            doc.kind = take().text == "mutation" ? RequestKind::Mutation : RequestKind::Query;
            if (peek().kind == TokenKind::Name) {
                doc.operation_name = take().text;
            }
            if (peek().is_punct("(")) {
                take();
                while (!peek().is_punct(")")) {
                    doc.variables.push_back(variable_def());
                }
                take();
            }
        } else if (peek().is_name("subscription")) {
            fail("unsupported construct: subscriptions are not supported");
        } else if (peek().is_name("fragment")) {
            fail("unsupported construct: fragments are not supported");
        } else if (!peek().is_punct("{")) {
            fail("expected an operation or a selection set");
        }
        doc.selections = selection_set();
        if (peek().kind != TokenKind::End) {
            fail("a request document holds exactly one operation");
        }
        return doc;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) {
        const Token& t = peek();
        throw SyntaxError(message + (t.kind == TokenKind::End ? " (at end of input)"
                                                              : " near \"" + t.text + "\""),
                          t.line, t.column);
    }

    std::string expect_name() {
        if (peek().kind != TokenKind::Name) {
            fail("expected a name");
        }
        return take().text;
    }

    void expect_punct(const char* p) {
        if (!peek().is_punct(p)) {
            fail(std::string("expected \"") + p + "\"");
        }
        take();
    }

    VariableDef variable_def() {
        expect_punct("$");
        VariableDef def;
        def.name = expect_name();
        expect_punct(":");
        def.type = type_expr();
        if (peek().is_punct("=")) {
            take();
            def.default_value = value(/*allow_variables=*/false);
        }
        return def;
    }

    GqlTypeExpr type_expr() {
        GqlTypeExpr expr;
        if (peek().is_punct("[")) {
            take();
            GqlTypeExpr inner = type_expr();
            expect_punct("]");
            expr = gql_list(std::move(inner));
        } else {
            expr = gql_named(expect_name());
        }
        if (peek().is_punct("!")) {
            take();
            expr = gql_non_null(std::move(expr));
        }
        return expr;
    }

    std::vector<Selection> selection_set() {
        expect_punct("{");
        std::vector<Selection> out;
        while (!peek().is_punct("}")) {
            if (peek().is_punct("...")) {
                fail("unsupported construct: fragments are not supported");
            }
            out.push_back(selection());
        }
        take();
        if (out.empty()) {
            fail("selection sets cannot be empty");
        }
        return out;
    }

    Selection selection() {
        Selection sel;
        sel.line = peek().line;
        sel.column = peek().column;
        std::string first = expect_name();
        if (peek().is_punct(":")) {
            take();
            sel.alias = first;
            sel.field = expect_name();
        } else {
            sel.alias = first;
            sel.field = std::move(first);
        }
        if (peek().is_punct("(")) {
            take();
            if (peek().is_punct(")")) {
                fail("argument lists cannot be empty");
            }
            while (!peek().is_punct(")")) {
                std::string name = expect_name();
                expect_punct(":");
                sel.args.emplace_back(std::move(name), value(/*allow_variables=*/true));
            }
            take();
        }
        if (peek().is_punct("@")) {
            fail("unsupported construct: directives are not supported");
        }
        if (peek().is_punct("{")) {
            sel.subselections = selection_set();
        }
        return sel;
    }

    ReqValue value(bool allow_variables) {
        ReqValue v;
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::IntValue:
            v.kind = ReqValue::Kind::Int;
            v.int_value = std::stoll(take().text);
            return v;
        case TokenKind::FloatValue:
            v.kind = ReqValue::Kind::Float;
            v.float_value = std::stod(take().text);
            return v;
        case TokenKind::StringValue:
            v.kind = ReqValue::Kind::String;
            v.text = take().text;
            return v;
        case TokenKind::Name: {
            std::string name = take().text;
            if (name == "true" || name == "false") {
                v.kind = ReqValue::Kind::Bool;
                v.bool_value = name == "true";
                return v;
            }
            if (name == "null") {
                v.kind = ReqValue::Kind::Null;
                return v;
            }
            v.kind = ReqValue::Kind::Enum;
            v.text = std::move(name);
            return v;
        }
        case TokenKind::Punct:
            if (t.text == "$") {
                if (!allow_variables) {
                    fail("variables are not allowed in default values");
                }
                take();
                v.kind = ReqValue::Kind::Variable;
                v.text = expect_name();
                return v;
            }
            if (t.text == "[") {
                take();
                v.kind = ReqValue::Kind::List;
                while (!peek().is_punct("]")) {
                    v.list.push_back(value(allow_variables));
                }
                take();
                return v;
            }
            if (t.text == "{") {
                take();
                v.kind = ReqValue::Kind::Object;
                while (!peek().is_punct("}")) {
                    std::string name = expect_name();
                    expect_punct(":");
                    v.object.emplace_back(std::move(name), value(allow_variables));
                }
                take();
                return v;
            }
            fail("expected a value");
        default:
            fail("expected a value");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

RequestDoc parse_request(const std::string& text) { return RequestParser(text).run(); }

} // namespace restql
