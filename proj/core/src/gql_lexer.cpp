#include "gql_lexer.hpp"

#include <cctype>

namespace restql::detail {

namespace {

bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ignored();
            Token t = next();
            bool end = t.kind == TokenKind::End;
            out.push_back(std::move(t));
            if (end) {
                return out;
            }
        }
    }

private:
    void skip_ignored() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
                advance();
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void advance() {
        ++pos_;
        ++col_;
    }

    Token make(TokenKind kind, std::string text, int line, int col) {
        return {kind, std::move(text), line, col};
    }

    Token next() {
        if (pos_ >= text_.size()) {
            return make(TokenKind::End, "", line_, col_);
        }
        const int line = line_;
        const int col = col_;
        char c = text_[pos_];

        if (name_start(c)) {
            std::string name;
            while (pos_ < text_.size() && name_char(text_[pos_])) {
                name.push_back(text_[pos_]);
                advance();
            }
            return make(TokenKind::Name, std::move(name), line, col);
        }

        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            return number(line, col);
        }

        if (c == '"') {
            return string_value(line, col);
        }

        if (c == '.') {
            if (text_.compare(pos_, 3, "...") == 0) {
                advance();
                advance();
                advance();
                return make(TokenKind::Punct, "...", line, col);
            }
            throw SyntaxError("unexpected '.'", line, col);
        }

        static const std::string punct = "!$():=@[]{}|&";
        if (punct.find(c) != std::string::npos) {
            advance();
            return make(TokenKind::Punct, std::string(1, c), line, col);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }

    Token number(int line, int col) {
        std::string text;
        bool is_float = false;
        if (text_[pos_] == '-') {
            text.push_back('-');
            advance();
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw SyntaxError("malformed number", line, col);
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            text.push_back(text_[pos_]);
            advance();
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            is_float = true;
            text.push_back('.');
            advance();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw SyntaxError("malformed float", line, col);
            }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                text.push_back(text_[pos_]);
                advance();
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            is_float = true;
            text.push_back(text_[pos_]);
            advance();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                text.push_back(text_[pos_]);
                advance();
            }
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                throw SyntaxError("malformed exponent", line, col);
            }
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                text.push_back(text_[pos_]);
                advance();
            }
        }
        return make(is_float ? TokenKind::FloatValue : TokenKind::IntValue, std::move(text),
                    line, col);
    }

    Token string_value(int line, int col) {
        if (text_.compare(pos_, 3, "\"\"\"") == 0) {
            throw SyntaxError("block strings are not supported", line, col);
        }
        advance(); // opening quote
        std::string value;
        while (true) {
            if (pos_ >= text_.size() || text_[pos_] == '\n') {
                throw SyntaxError("unterminated string", line, col);
            }
            char c = text_[pos_];
            if (c == '"') {
                advance();
                return make(TokenKind::StringValue, std::move(value), line, col);
            }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) {
                    throw SyntaxError("unterminated escape", line, col);
                }
                char esc = text_[pos_];
                switch (esc) {
                case '"': value.push_back('"'); break;
                case '\\': value.push_back('\\'); break;
                case '/': value.push_back('/'); break;
                case 'b': value.push_back('\b'); break;
                case 'f': value.push_back('\f'); break;
                case 'n': value.push_back('\n'); break;
                case 'r': value.push_back('\r'); break;
                case 't': value.push_back('\t'); break;
                case 'u': {
                    if (pos_ + 4 >= text_.size()) {
                        throw SyntaxError("truncated unicode escape", line_, col_);
                    }
                    unsigned code = 0;
                    for (int i = 0; i < 4; ++i) {
                        advance();
                        char h = text_[pos_];
                        code <<= 4;
                        if (h >= '0' && h <= '9') {
                            code |= static_cast<unsigned>(h - '0');
                        } else if (h >= 'a' && h <= 'f') {
                            code |= static_cast<unsigned>(h - 'a' + 10);
                        } else if (h >= 'A' && h <= 'F') {
                            code |= static_cast<unsigned>(h - 'A' + 10);
                        } else {
                            throw SyntaxError("bad unicode escape", line_, col_);
                        }
                    }
                    // UTF-8 encode the BMP code point.
                    if (code < 0x80) {
                        value.push_back(static_cast<char>(code));
                    } else if (code < 0x800) {
                        value.push_back(static_cast<char>(0xC0 | (code >> 6)));
                        value.push_back(static_cast<char>(0x80 | (code & 0x3F)));
                    } else {
                        value.push_back(static_cast<char>(0xE0 | (code >> 12)));
                        value.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
                        value.push_back(static_cast<char>(0x80 | (code & 0x3F)));
                    }
                    break;
                }
                default:
                    throw SyntaxError("unknown escape sequence", line_, col_);
                }
                advance();
            } else {
                value.push_back(c);
                advance();
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

std::vector<Token> lex_graphql(const std::string& text) { return Lexer(text).run(); }

} // namespace restql::detail
