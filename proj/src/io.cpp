#include "rigidrel/io.hpp"

#include <fstream>

namespace rigidrel
{

namespace
{
    int hex_digit(char c)
    {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        throw EncodingError(std::string("invalid lowercase hex digit '") + c + "'");
    }

    template <typename T>
    T field(const Json & j, const char * name)
    {
        if (!j.is_object() || !j.contains(name))
            throw EncodingError(std::string("missing field \"") + name + "\"");
        try {
            return j.at(name).get<T>();
        }
        catch (const nlohmann::json::exception & e) {
            throw EncodingError(std::string("bad field \"") + name + "\": " + e.what());
        }
    }

    Tuple tuple_from_json(const Json & j)
    {
        if (!j.is_array())
            throw EncodingError("tuple must be a JSON array");
        Tuple t;
        for (const auto & e : j) {
            if (!e.is_number_integer())
                throw EncodingError("tuple entries must be integers");
            t.push_back(e.get<Element>());
        }
        return t;
    }
}

std::string mask_to_hex(const Mask & mask)
{
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t bytes = (mask.size() + 7) / 8;
    std::string out;
    out.reserve(2 * bytes);
    for (std::size_t b = 0; b < bytes; ++b) {
        unsigned v = 0;
        for (std::size_t i = 0; i < 8 && 8 * b + i < mask.size(); ++i)
            if (mask.test(8 * b + i))
                v |= 1u << i;
        out.push_back(digits[v >> 4]);
        out.push_back(digits[v & 15u]);
    }
    return out;
}

Mask mask_from_hex(const std::string & hex, std::size_t bits)
{
    const std::size_t bytes = (bits + 7) / 8;
    if (hex.size() != 2 * bytes)
        throw EncodingError("mask_hex has " + std::to_string(hex.size()) + " digits, expected "
                            + std::to_string(2 * bytes));
    Mask mask(bits);
    for (std::size_t b = 0; b < bytes; ++b) {
        const unsigned v = static_cast<unsigned>(hex_digit(hex[2 * b]) * 16 + hex_digit(hex[2 * b + 1]));
        for (std::size_t i = 0; i < 8; ++i) {
            if (!((v >> i) & 1u))
                continue;
            if (8 * b + i >= bits)
                throw EncodingError("mask_hex sets a bit beyond k^h");
            mask.set(8 * b + i);
        }
    }
    return mask;
}

Json relation_to_json(const Relation & rho, bool compact)
{
    Json j;
    j["k"] = rho.k();
    j["h"] = rho.arity();
    if (compact) {
        j["mask_hex"] = mask_to_hex(rho.mask());
    } else {
        Json tuples = Json::array();
        for (const auto & t : rho.tuples())
            tuples.push_back(t);
        j["tuples"] = std::move(tuples);
    }
    return j;
}

Relation relation_from_json(const Json & j)
{
    const int k = field<int>(j, "k");
    const int h = field<int>(j, "h");
    if (k < 2 || h < 1)
        throw EncodingError("relation needs k >= 2 and h >= 1");
    const Domain d{k};
    const bool has_tuples = j.contains("tuples");
    const bool has_mask = j.contains("mask_hex");
    if (has_tuples == has_mask)
        throw EncodingError("relation needs exactly one of \"tuples\" or \"mask_hex\"");
    if (has_mask) {
        Relation empty(d, h);
        return Relation::from_mask(d, h, mask_from_hex(field<std::string>(j, "mask_hex"), empty.tuple_count()));
    }
    const Json & tuples = j.at("tuples");
    if (!tuples.is_array())
        throw EncodingError("\"tuples\" must be an array");
    Relation rho(d, h);
    for (const auto & e : tuples) {
        const Tuple t = tuple_from_json(e);
        if (static_cast<int>(t.size()) != h)
            throw EncodingError("tuple of length " + std::to_string(t.size()) + " in a relation of arity "
                                + std::to_string(h));
        rho.insert(t);
    }
    return rho;
}

Json unary_to_json(const PartialUnaryFn & f)
{
    Json table = Json::array();
    for (auto v : f.table()) {
        if (v == kUndefined)
            table.push_back(nullptr);
        else
            table.push_back(v);
    }
    return Json{{"k", f.k()}, {"table", std::move(table)}};
}

PartialUnaryFn unary_from_json(const Json & j)
{
    const int k = field<int>(j, "k");
    if (k < 2)
        throw EncodingError("unary function needs k >= 2");
    const Json & table = j.at("table");
    if (!table.is_array())
        throw EncodingError("\"table\" must be an array");
    std::vector<Element> t;
    for (const auto & e : table) {
        if (e.is_null())
            t.push_back(kUndefined);
        else if (e.is_number_integer())
            t.push_back(e.get<Element>());
        else
            throw EncodingError("table entries must be integers or null");
    }
    return PartialUnaryFn(Domain{k}, std::move(t));
}

Json partial_fn_to_json(const PartialFn & f)
{
    Json graph = Json::array();
    for (const auto & [args, value] : f.graph())
        graph.push_back(Json{{"args", args}, {"value", value}});
    return Json{{"k", f.k()}, {"n", f.arity()}, {"graph", std::move(graph)}};
}

PartialFn partial_fn_from_json(const Json & j)
{
    const int k = field<int>(j, "k");
    const int n = field<int>(j, "n");
    if (k < 2 || n < 1)
        throw EncodingError("partial function needs k >= 2 and n >= 1");
    if (!j.contains("graph") || !j.at("graph").is_array())
        throw EncodingError("\"graph\" must be an array");
    std::vector<std::pair<Tuple, Element>> graph;
    for (const auto & e : j.at("graph")) {
        Tuple args = tuple_from_json(e.contains("args") ? e.at("args") : Json());
        const Element v = field<Element>(e, "value");
        if (v < 0 || v >= k)
            throw EncodingError("function value outside the domain");
        graph.emplace_back(std::move(args), v);
    }
    return PartialFn::from_graph(Domain{k}, n, graph);
}

Json read_json_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw EncodingError("cannot open " + path);
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::exception & e) {
        throw EncodingError(path + ": " + e.what());
    }
}

} // namespace rigidrel
