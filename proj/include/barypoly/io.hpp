#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "numerics.hpp"
#include "polytope.hpp"

/**
 * Polytope files:
 *
 *     {"dim": d, "vertices": [[x, ...], ...], "labels": ["a", ...]}
 *
 * Each coordinate is a JSON number, taken exactly from its decimal text, or a
 * string such as "3/7". Vertex order in the file is the index order.
 */
namespace barypoly {

using json = nlohmann::json;

namespace detail {

/// SAX consumer building a DOM in which every number is replaced by its
/// literal text, so no coordinate ever passes through a double.
class ExactNumberSax : public nlohmann::json_sax<json>
{
    public:
        explicit ExactNumberSax(json& root) : root_(root) {}

        bool null() override { return put(nullptr); }
        bool boolean(bool v) override { return put(v); }
        bool number_integer(number_integer_t v) override { return put(std::to_string(v)); }
        bool number_unsigned(number_unsigned_t v) override { return put(std::to_string(v)); }
        bool number_float(number_float_t, const string_t& s) override { return put(s); }
        bool string(string_t& v) override { return put(v); }
        bool binary(binary_t& v) override { return put(json::binary(v)); }

        bool start_object(std::size_t) override { return open(json::object()); }
        bool end_object() override { return close(); }
        bool start_array(std::size_t) override { return open(json::array()); }
        bool end_array() override { return close(); }
        bool key(string_t& k) override
        {
            key_ = k;
            return true;
        }

        bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override
        {
            error_ = "JSON syntax error at byte " + std::to_string(position) + ": " + ex.what();
            return false;
        }

        const std::string& error() const { return error_; }

    private:
        json* insert(json value)
        {
            if (stack_.empty()) {
                root_ = std::move(value);
                return &root_;
            }
            json& top = *stack_.back();
            if (top.is_array()) {
                top.push_back(std::move(value));
                return &top.back();
            }
            top[key_] = std::move(value);
            return &top[key_];
        }
        bool put(json value)
        {
            insert(std::move(value));
            return true;
        }
        bool open(json container)
        {
            stack_.push_back(insert(std::move(container)));
            return true;
        }
        bool close()
        {
            stack_.pop_back();
            return true;
        }

        json& root_;
        std::vector<json*> stack_;
        std::string key_;
        std::string error_;
};

inline Rational coordinate_from_json(const json& j)
{
    if (!j.is_string())
        throw Error(ErrorCode::ParseError, "coordinate must be a number or a \"p/q\" string");
    return parse_rational(j.get<std::string>());
}

}   // namespace detail

/// Parses JSON text, keeping every number as its literal string.
inline json parse_json_exact(std::string_view text)
{
    json root;
    detail::ExactNumberSax sax(root);
    if (!json::sax_parse(text.begin(), text.end(), &sax))
        throw Error(ErrorCode::ParseError, sax.error().empty() ? "malformed JSON" : sax.error());
    return root;
}

/// Reads and validates a polytope description.
inline Polytope parse_polytope(std::string_view text)
{
    json doc = parse_json_exact(text);
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("vertices"))
        throw Error(ErrorCode::ParseError, "expected an object with \"dim\" and \"vertices\"");
    Rational dim_value = detail::coordinate_from_json(doc["dim"]);
    if (dim_value < 1 || boost::multiprecision::denominator(dim_value) != 1 || dim_value > 1000)
        throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
    const auto d = static_cast<std::size_t>(boost::multiprecision::numerator(dim_value).convert_to<long>());

    const json& verts = doc["vertices"];
    if (!verts.is_array())
        throw Error(ErrorCode::ParseError, "\"vertices\" must be an array");
    RationalMatrix v(d, verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j) {
        if (!verts[j].is_array() || verts[j].size() != d)
            throw Error(ErrorCode::ParseError, "vertex " + std::to_string(j + 1) + " must have " + std::to_string(d)
                                                   + " coordinates");
        for (std::size_t i = 0; i < d; ++i)
            v(i, j) = detail::coordinate_from_json(verts[j][i]);
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array())
            throw Error(ErrorCode::ParseError, "\"labels\" must be an array of strings");
        for (const auto& l : doc["labels"]) {
            if (!l.is_string())
                throw Error(ErrorCode::ParseError, "\"labels\" must be an array of strings");
            labels.push_back(l.get<std::string>());
        }
    }
    return validate(std::move(v), d, std::move(labels));
}

inline Polytope load_polytope(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polytope(buf.str());
}

inline json to_json(const RationalVector& v)
{
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(to_string(x));
    return arr;
}

inline RationalVector vector_from_json(const json& arr)
{
    if (!arr.is_array())
        throw Error(ErrorCode::ParseError, "expected an array of rationals");
    RationalVector v;
    for (const auto& x : arr)
        v.push_back(detail::coordinate_from_json(x));
    return v;
}

inline json polytope_to_json(const Polytope& poly)
{
    json doc;
    doc["dim"] = poly.dim();
    doc["vertices"] = json::array();
    for (std::size_t j = 0; j < poly.size(); ++j)
        doc["vertices"].push_back(to_json(poly.vertex(j)));
    if (!poly.labels().empty())
        doc["labels"] = poly.labels();
    return doc;
}

/// "1/2,1/2", "1/2 1/2" or "0.5, 0.5".
inline RationalVector parse_point(std::string_view text)
{
    RationalVector p;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            p.push_back(parse_rational(token));
            token.clear();
        }
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token.push_back(c);
    }
    flush();
    return p;
}

}   // namespace barypoly
