#include "restql/translator.hpp"

#include "gql_lexer.hpp"

namespace restql {

namespace {

using detail::Token;
using detail::TokenKind;

class SdlParser {
public:
    explicit SdlParser(const std::string& text) : tokens_(detail::lex_graphql(text)) {}

    SchemaDoc run() {
        while (!peek().is_punct("") && peek().kind != TokenKind::End) {
            definition();
        }
        return std::move(schema_);
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

    void definition() {
        if (peek().kind != TokenKind::Name) {
            fail("expected a type definition keyword");
        }
        const std::string keyword = take().text;
        if (keyword == "scalar") {
            GqlTypeDecl decl;
            decl.kind = GqlTypeKind::Scalar;
            decl.name = expect_name();
            add_decl(std::move(decl));
            return;
        }
        if (keyword == "enum") {
            GqlTypeDecl decl;
            decl.kind = GqlTypeKind::Enum;
            decl.name = expect_name();
            expect_punct("{");
            while (!peek().is_punct("}")) {
                decl.enum_values.push_back(expect_name());
            }
            take();
            add_decl(std::move(decl));
            return;
        }
        if (keyword == "interface" || keyword == "type" || keyword == "input") {
            GqlTypeDecl decl;
            decl.kind = keyword == "interface" ? GqlTypeKind::Interface
                        : keyword == "input"   ? GqlTypeKind::InputObject
                                               : GqlTypeKind::Object;
            decl.name = expect_name();
            expect_punct("{");
            std::vector<GqlField> fields;
            while (!peek().is_punct("}")) {
                fields.push_back(field(decl.kind != GqlTypeKind::InputObject));
            }
            take();
            if (decl.kind == GqlTypeKind::Object && decl.name == "Query") {
                schema_.query_root = std::move(fields);
                return;
            }
            if (decl.kind == GqlTypeKind::Object && decl.name == "Mutation") {
                schema_.mutation_root = std::move(fields);
                return;
            }
            decl.fields = std::move(fields);
            add_decl(std::move(decl));
            return;
        }
        fail("unknown definition keyword \"" + keyword + "\"");
    }

    void add_decl(GqlTypeDecl decl) {
        if (schema_.types.count(decl.name) > 0) {
            fail("type \"" + decl.name + "\" declared twice");
        }
        schema_.types[decl.name] = std::move(decl);
    }

    GqlField field(bool args_allowed) {
        GqlField f;
        f.name = expect_name();
        if (peek().is_punct("(")) {
            if (!args_allowed) {
                fail("input object fields cannot declare arguments");
            }
            take();
            while (!peek().is_punct(")")) {
                GqlArg arg;
                arg.name = expect_name();
                expect_punct(":");
                arg.type = type_expr();
                f.args.push_back(std::move(arg));
            }
            take();
        }
        expect_punct(":");
        f.type = type_expr();
        return f;
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

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    SchemaDoc schema_;
};

} // namespace

SchemaDoc parse_sdl(const std::string& text) { return SdlParser(text).run(); }

} // namespace restql
