#include "toml_lite.hpp"

#include <cctype>
#include <cstdlib>

#include "types.hpp"

namespace pdm {

namespace {

using nlohmann::json;

class Cursor {
public:
    explicit Cursor(const std::string& text) : s_(text) {}

    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    char get() {
        char c = s_[i_++];
        if (c == '\n') ++line_;
        return c;
    }
    std::size_t line() const { return line_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ConfigParse,
                    "toml parse error at line " + std::to_string(line_) + ": " + msg);
    }

    // Skip spaces/tabs and comments; newlines only when requested.
    void skip_ws(bool cross_lines) {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                get();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (c == '\n' && cross_lines) {
                get();
            } else {
                break;
            }
        }
    }

    std::string parse_basic_string() {
        if (get() != '"') fail("expected '\"'");
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = get();
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail("unsupported escape sequence");
                }
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string parse_key() {
        skip_ws(false);
        if (eof()) fail("expected key");
        if (peek() == '"') return parse_basic_string();
        std::string out;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
                out.push_back(get());
            } else {
                break;
            }
        }
        if (out.empty()) fail("expected key");
        return out;
    }

    json parse_value() {
        skip_ws(true);
        if (eof()) fail("expected value");
        const char c = peek();
        if (c == '"') return json(parse_basic_string());
        if (c == '[') return parse_array();
        if (c == '{') return parse_inline_table();
        return parse_scalar();
    }

private:
    json parse_array() {
        get();  // '['
        json arr = json::array();
        while (true) {
            skip_ws(true);
            if (eof()) fail("unterminated array");
            if (peek() == ']') {
                get();
                break;
            }
            arr.push_back(parse_value());
            skip_ws(true);
            if (!eof() && peek() == ',') {
                get();
            } else {
                skip_ws(true);
                if (eof() || peek() != ']') fail("expected ',' or ']' in array");
            }
        }
        return arr;
    }

    json parse_inline_table() {
        get();  // '{'
        json obj = json::object();
        skip_ws(false);
        if (!eof() && peek() == '}') {
            get();
            return obj;
        }
        while (true) {
            std::string key = parse_key();
            skip_ws(false);
            if (eof() || get() != '=') fail("expected '=' in inline table");
            obj[key] = parse_value();
            skip_ws(false);
            if (eof()) fail("unterminated inline table");
            char c = get();
            if (c == '}') break;
            if (c != ',') fail("expected ',' or '}' in inline table");
        }
        return obj;
    }

    json parse_scalar() {
        std::string tok;
        while (!eof()) {
            char c = peek();
            if (c == '\n' || c == ',' || c == ']' || c == '}' || c == '#' || c == ' ' ||
                c == '\t' || c == '\r')
                break;
            tok.push_back(get());
        }
        if (tok == "true") return json(true);
        if (tok == "false") return json(false);
        if (tok.empty()) fail("expected value");
        // Number: float when it carries a fraction/exponent, integer otherwise.
        std::string digits;
        digits.reserve(tok.size());
        for (char c : tok)
            if (c != '_') digits.push_back(c);
        const bool is_float = digits.find_first_of(".eE") != std::string::npos ||
                              digits == "inf" || digits == "-inf" || digits == "nan";
        char* end = nullptr;
        if (is_float) {
            double v = std::strtod(digits.c_str(), &end);
            if (end == nullptr || *end != '\0') fail("malformed number '" + tok + "'");
            return json(v);
        }
        long long v = std::strtoll(digits.c_str(), &end, 10);
        if (end == nullptr || *end != '\0') fail("malformed value '" + tok + "'");
        return json(v);
    }

    const std::string& s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
};

json* descend(json& root, const std::string& dotted, Cursor& cur) {
    json* node = &root;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = dotted.find('.', start);
        const std::string part = dotted.substr(start, dot == std::string::npos
                                                          ? std::string::npos
                                                          : dot - start);
        if (part.empty()) cur.fail("empty table name component");
        if (!node->contains(part)) (*node)[part] = json::object();
        node = &(*node)[part];
        if (!node->is_object()) cur.fail("'" + part + "' is not a table");
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return node;
}

} // namespace

json toml_lite_parse(const std::string& text) {
    json root = json::object();
    json* table = &root;
    Cursor cur(text);
    while (true) {
        cur.skip_ws(true);
        if (cur.eof()) break;
        if (cur.peek() == '[') {
            cur.get();
            std::string name;
            while (!cur.eof() && cur.peek() != ']') name.push_back(cur.get());
            if (cur.eof()) cur.fail("unterminated table header");
            cur.get();  // ']'
            // trim
            while (!name.empty() && (name.front() == ' ' || name.front() == '\t'))
                name.erase(name.begin());
            while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
                name.pop_back();
            if (name.empty()) cur.fail("empty table name");
            table = descend(root, name, cur);
        } else {
            std::string key = cur.parse_key();
            cur.skip_ws(false);
            if (cur.eof() || cur.get() != '=') cur.fail("expected '=' after key '" + key + "'");
            (*table)[key] = cur.parse_value();
        }
    }
    return root;
}

} // namespace pdm
