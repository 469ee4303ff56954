#include "vscert/facts.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "vscert/permgroup.hpp"
#include "facts_builtin.hpp"

namespace vscert {

using nlohmann::json;

namespace {

const std::set<std::string> integer_fields = {
    "min_proper_subgroup_index",
    "min_nontrivial_dim_mod2",
    "min_faithful_ordinary_dim",
    "min_faithful_projective_dim",
};

bool is_ascii(const json& j)
{
    if (j.is_string()) {
        for (unsigned char c : j.get_ref<const std::string&>())
            if (c > 0x7f)
                return false;
        return true;
    }
    if (j.is_structured()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (j.is_object())
                for (unsigned char c : it.key())
                    if (c > 0x7f)
                        return false;
            if (!is_ascii(*it))
                return false;
        }
    }
    return true;
}

void require(bool ok, const std::string& where, const std::string& what)
{
    if (!ok)
        throw FactsError(where + ": " + what);
}

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    require(obj.is_object(), where, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        require(allowed.count(it.key()) != 0, where, "unknown field '" + it.key() + "'");
}

bool is_rational_text(const std::string& s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    const std::size_t num = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    if (i == num)
        return false;
    if (i == s.size())
        return true;
    if (s[i] != '/')
        return false;
    const std::size_t den = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    return i == s.size() && i > den && s.find_first_not_of("0", den) != std::string::npos;
}

void validate_field(const std::string& name, const json& value, const std::string& where)
{
    if (integer_fields.count(name)) {
        if (value.is_number_integer()) {
            require(value.get<std::int64_t>() > 0, where, "must be positive");
            return;
        }
        require(value.is_string(), where, "expected an integer or a formula");
        try {
            evaluate_formula(value.get<std::string>(), 40, 19);
        } catch (const std::invalid_argument& e) {
            throw FactsError(where + ": " + e.what());
        }
        return;
    }
    if (name == "double_cover_2g_char_field_obstruction") {
        require(value.is_string() && is_rational_text(value.get<std::string>()), where,
                "expected a rational written as a string");
        require(value.get<std::string>().find_first_not_of("+-0/") != std::string::npos, where, "must be nonzero");
        return;
    }
    if (name == "excluded_2adic_dims") {
        require(value.is_array(), where, "expected a list of dimensions");
        for (const auto& d : value)
            require(d.is_number_integer() && d.get<std::int64_t>() > 0, where, "dimensions must be positive integers");
        return;
    }
    if (name == "exceptions") {
        require(value.is_array(), where, "expected a list of record keys");
        for (const auto& k : value)
            require(k.is_string() && !k.get<std::string>().empty(), where, "keys must be nonempty strings");
        return;
    }
    if (name == "generators") {
        require(value.is_array() && !value.empty(), where, "expected a nonempty list of image lists");
        return;
    }
}

std::vector<Permutation> decode_generators(const json& value, const std::string& where)
{
    std::vector<Permutation> out;
    std::size_t degree = 0;
    for (const auto& g : value) {
        require(g.is_array() && !g.empty(), where, "each generator is a nonempty image list");
        std::vector<Point> images;
        for (const auto& x : g) {
            require(x.is_number_unsigned(), where, "images must be nonnegative integers");
            images.push_back(x.get<Point>());
        }
        if (out.empty())
            degree = images.size();
        require(images.size() == degree, where, "generators have different degrees");
        try {
            out.emplace_back(std::move(images));
        } catch (const std::invalid_argument&) {
            throw FactsError(where + ": image list is not a permutation");
        }
    }
    return out;
}

GroupFactsRecord parse_record(const json& r, std::size_t index)
{
    std::string where = "record " + std::to_string(index);
    std::set<std::string> allowed{"key", "order"};
    for (const auto& f : FactsLedger::field_names())
        allowed.insert(f);
    require_keys(r, allowed, where);
    require(r.contains("key") && r["key"].is_string() && !r["key"].get<std::string>().empty(), where,
            "missing key");
    GroupFactsRecord rec;
    rec.key = r["key"].get<std::string>();
    where = "record '" + rec.key + "'";

    if (r.contains("order")) {
        const auto& o = r["order"];
        const std::string ow = where + ".order";
        require_keys(o, {"value", "factorization", "provenance"}, ow);
        require(o.contains("value") && o["value"].is_string(), ow, "value must be a decimal string");
        require(o.contains("factorization") && o["factorization"].is_object(), ow, "missing factorization");
        require(o.contains("provenance") && o["provenance"].is_string() && !o["provenance"].get<std::string>().empty(),
                ow, "missing provenance");
        OrderFact of;
        const auto text = o["value"].get<std::string>();
        require(!text.empty() && text.find_first_not_of("0123456789") == std::string::npos, ow,
                "value must be a decimal string");
        of.value = BigInt(text);
        for (auto it = o["factorization"].begin(); it != o["factorization"].end(); ++it) {
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(it.key(), &used);
                require(used == it.key().size(), ow, "bad prime '" + it.key() + "'");
            } catch (const std::logic_error&) {
                throw FactsError(ow + ": bad prime '" + it.key() + "'");
            }
            require(arith::is_prime(p), ow, it.key() + " is not prime");
            require(it->is_number_unsigned() && it->get<unsigned>() > 0, ow, "exponents must be positive");
            of.factorization[p] = it->get<unsigned>();
        }
        require(arith::to_integer(of.factorization) == of.value, ow, "factorization does not multiply to the order");
        of.provenance = o["provenance"].get<std::string>();
        rec.order = std::move(of);
    }

    for (const auto& name : FactsLedger::field_names()) {
        if (!r.contains(name))
            continue;
        const auto& f = r[name];
        const std::string fw = where + "." + name;
        require_keys(f, {"value", "provenance"}, fw);
        require(f.contains("value"), fw, "missing value");
        require(f.contains("provenance") && f["provenance"].is_string() && !f["provenance"].get<std::string>().empty(),
                fw, "missing provenance");
        validate_field(name, f["value"], fw);
        rec.fields[name] = CitedValue{f["value"], f["provenance"].get<std::string>()};
    }

    if (auto it = rec.fields.find("generators"); it != rec.fields.end()) {
        const std::string gw = where + ".generators";
        rec.generators = decode_generators(it->second.value, gw);
        require(rec.order.has_value(), gw, "generators need a stated order to be checked against");
        const auto g = PermGroup::build_chain(rec.generators);
        require(g.order() == rec.order->value, gw,
                "generators give order " + g.order().str() + ", record states " + rec.order->value.str());
        require(g.is_transitive(), gw, "generators are not transitive");
    }
    return rec;
}

json record_to_json(const GroupFactsRecord& rec)
{
    json r = json::object();
    r["key"] = rec.key;
    if (rec.order) {
        json fac = json::object();
        for (auto [p, e] : rec.order->factorization)
            fac[std::to_string(p)] = e;
        r["order"] = {{"value", rec.order->value.str()}, {"factorization", fac}, {"provenance", rec.order->provenance}};
    }
    for (const auto& [name, cv] : rec.fields)
        r[name] = {{"value", cv.value}, {"provenance", cv.provenance}};
    return r;
}

// Recursive descent over: expr = term {(+|-) term}; term = factor {(*|/) factor};
// factor = number [ident | '('] | ident | floor(expr) | (expr).
class FormulaParser {
public:
    FormulaParser(std::string_view s, std::int64_t n, std::int64_t g) : s_(s), n_(n), g_(g) {}

    std::int64_t run()
    {
        const auto v = expr();
        skip();
        if (pos_ != s_.size())
            fail("trailing characters");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("formula '" + std::string(s_) + "': " + what);
    }
    void skip()
    {
        while (pos_ < s_.size() && s_[pos_] == ' ')
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::int64_t expr()
    {
        auto v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    std::int64_t term()
    {
        auto v = factor();
        for (;;) {
            if (eat('*')) {
                v *= factor();
            } else if (eat('/')) {
                const auto d = factor();
                if (d <= 0 || v < 0)
                    fail("division needs nonnegative operands and a positive divisor");
                v /= d;
            } else {
                return v;
            }
        }
    }
    std::int64_t factor()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                v = v * 10 + (s_[pos_++] - '0');
            // Juxtaposition: 2g, 2(n-1).
            if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
                v *= factor();
            return v;
        }
        if (eat('(')) {
            const auto v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        std::string ident;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            ident += s_[pos_++];
        if (ident == "n")
            return n_;
        if (ident == "g")
            return g_;
        if (ident == "floor") {
            if (!eat('('))
                fail("floor needs '('");
            const auto v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        fail(ident.empty() ? std::string("unexpected character") : "unknown name '" + ident + "'");
    }

    std::string_view s_;
    std::int64_t n_;
    std::int64_t g_;
    std::size_t pos_ = 0;
};

} // namespace

std::int64_t evaluate_formula(std::string_view text, std::int64_t n, std::int64_t g)
{
    return FormulaParser(text, n, g).run();
}

const std::vector<std::string>& FactsLedger::field_names()
{
    static const std::vector<std::string> names = {
        "min_proper_subgroup_index",
        "min_nontrivial_dim_mod2",
        "min_faithful_ordinary_dim",
        "min_faithful_projective_dim",
        "double_cover_2g_char_field_obstruction",
        "excluded_2adic_dims",
        "exceptions",
        "generators",
    };
    return names;
}

FactsLedger FactsLedger::parse(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FactsError(std::string("facts: not valid JSON: ") + e.what());
    }
    require(is_ascii(doc), "facts", "non-ASCII text");
    require_keys(doc, {"schema", "records"}, "facts");
    require(doc.contains("schema") && doc["schema"] == std::string(schema), "facts",
            "schema must be \"" + std::string(schema) + "\"");
    require(doc.contains("records") && doc["records"].is_array(), "facts", "missing records list");

    FactsLedger ledger;
    std::set<std::string> keys;
    for (std::size_t i = 0; i < doc["records"].size(); ++i) {
        auto rec = parse_record(doc["records"][i], i);
        require(keys.insert(rec.key).second, "facts", "duplicate record '" + rec.key + "'");
        ledger.records_.push_back(std::move(rec));
    }
    return ledger;
}

FactsLedger FactsLedger::load_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FactsError("facts: cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

std::string_view FactsLedger::builtin_text() { return builtin_facts_json; }

FactsLedger FactsLedger::builtin() { return parse(builtin_text()); }

std::string FactsLedger::serialize() const
{
    json doc = json::object();
    doc["schema"] = std::string(schema);
    doc["records"] = json::array();
    for (const auto& r : records_)
        doc["records"].push_back(record_to_json(r));
    return doc.dump(2) + "\n";
}

std::string FactsLedger::digest() const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const GroupFactsRecord* FactsLedger::find(std::string_view key) const
{
    for (const auto& r : records_)
        if (r.key == key)
            return &r;
    return nullptr;
}

std::optional<CitedValue> FactsLedger::query(std::string_view key, std::string_view field) const
{
    const auto* rec = find(key);
    if (!rec)
        throw FactsError("facts: unknown key '" + std::string(key) + "'");
    const auto& names = field_names();
    if (std::find(names.begin(), names.end(), field) == names.end())
        throw FactsError("facts: unknown field '" + std::string(field) + "'");
    auto it = rec->fields.find(std::string(field));
    if (it == rec->fields.end())
        return std::nullopt;
    return it->second;
}

FactsLedger FactsLedger::without(std::string_view key, std::string_view field) const
{
    FactsLedger out;
    for (const auto& r : records_) {
        if (r.key != key) {
            out.records_.push_back(r);
            continue;
        }
        if (field == "*")
            continue;
        auto copy = r;
        if (field == "order")
            copy.order.reset();
        copy.fields.erase(std::string(field));
        if (field == "generators")
            copy.generators.clear();
        out.records_.push_back(std::move(copy));
    }
    return out;
}

CaseFacts::CaseFacts(const FactsLedger& ledger, std::string record_key, std::string generic_key, std::int64_t n,
                     std::int64_t g)
    : n_(n), g_(g)
{
    record_ = ledger.find(record_key);
    if (record_ || generic_key.empty())
        return;
    const auto* generic = ledger.find(generic_key);
    if (!generic)
        return;
    if (auto it = generic->fields.find("exceptions"); it != generic->fields.end())
        for (const auto& k : it->second.value)
            if (k.get<std::string>() == record_key)
                return;
    record_ = generic;
}

std::optional<ResolvedFact> CaseFacts::raw(std::string_view field) const
{
    if (!record_)
        return std::nullopt;
    auto it = record_->fields.find(std::string(field));
    if (it == record_->fields.end())
        return std::nullopt;
    return ResolvedFact{record_->key, std::string(field), it->second.value, it->second.provenance, std::nullopt};
}

std::optional<ResolvedFact> CaseFacts::integer(std::string_view field) const
{
    auto f = raw(field);
    if (!f)
        return f;
    if (f->value.is_number_integer())
        f->evaluated = f->value.get<std::int64_t>();
    else if (f->value.is_string())
        f->evaluated = evaluate_formula(f->value.get<std::string>(), n_, g_);
    else
        return std::nullopt;
    return f;
}

nlohmann::json to_json(const ResolvedFact& f)
{
    json j = {{"record", f.record}, {"field", f.field}, {"value", f.value}, {"provenance", f.provenance}};
    if (f.evaluated)
        j["evaluated"] = *f.evaluated;
    return j;
}

} // namespace vscert
