#include "padic/serialize.hpp"

#include <charconv>

namespace padic {

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            // allow decimal notation like "1.4"
            auto dot = s.find('.');
            if (dot == std::string::npos) return Rat(Int(s));
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            Int num(digits);
            Int den = pow_int(10, static_cast<unsigned long>(s.size() - dot - 1));
            return Rat(num, den);
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad rational: " + s);
    }
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad integer: " + j.dump());
        }
    }
    throw Error(ErrorCode::ParseError, "expected integer, got " + j.dump());
}

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error(ErrorCode::Internal, "double formatting failed");
    return std::string(buf, end);
}

Json to_json(const PadicInt& x) {
    return Json{{"p", x.prime()}, {"digits", x.digits()}, {"precision", x.precision()}};
}

PadicInt padic_from_json(const Json& j) {
    if (!j.contains("p") || !j.contains("digits"))
        throw Error(ErrorCode::ParseError, "padic integer needs p and digits");
    std::int64_t p = j.at("p").get<std::int64_t>();
    std::vector<std::int32_t> digits = j.at("digits").get<std::vector<std::int32_t>>();
    if (j.contains("precision") && j.at("precision").get<int>() != static_cast<int>(digits.size()))
        throw Error(ErrorCode::ParseError, "precision does not match digit count");
    return PadicInt(p, std::move(digits));
}

Json to_json(const ApproxLattice& lat) {
    Json t = Json::array(), X = Json::array();
    for (int ti : lat.t) t.push_back(ti);
    for (const auto& Xi : lat.X) X.push_back(Xi.str());
    return Json{{"p", lat.p}, {"t", t}, {"X", X}};
}

ApproxLattice lattice_from_json(const Json& j) {
    std::int64_t p = j.at("p").get<std::int64_t>();
    std::vector<int> t = j.at("t").get<std::vector<int>>();
    std::vector<Int> X;
    for (const auto& e : j.at("X")) X.push_back(int_from_json(e));
    return make_lattice(p, std::move(t), std::move(X));
}

Json to_json(const BallUnion& u) {
    Json centers = Json::array();
    for (const auto& c : u.centers) {
        Json row = Json::array();
        for (const auto& v : c) row.push_back(v.str());
        centers.push_back(row);
    }
    Json t = Json::array();
    for (int l : u.levels) t.push_back(l);
    return Json{{"p", u.p}, {"t", t}, {"centers", centers}};
}

BallUnion ball_union_from_json(const Json& j) {
    BallUnion u;
    u.p = j.at("p").get<std::int64_t>();
    u.levels = j.at("t").get<std::vector<int>>();
    for (const auto& row : j.at("centers")) {
        std::vector<Int> c;
        for (const auto& e : row) c.push_back(int_from_json(e));
        if (c.size() != u.levels.size())
            throw Error(ErrorCode::ParseError, "center has wrong dimension");
        for (size_t i = 0; i < c.size(); ++i) {
            Int m = pow_int(u.p, static_cast<unsigned long>(u.levels[i]));
            if (c[i] < 0 || c[i] >= m) throw Error(ErrorCode::ParseError, "center not canonical");
        }
        u.centers.insert(std::move(c));
    }
    return u;
}

Json to_json(const CountResult& r) {
    Json j{{"count", r.count.str()},
           {"N", r.N.str()},
           {"thresholds", r.thresholds},
           {"method", r.method == CountMethod::Brute ? "brute" : "fast"}};
    if (r.solutions) {
        Json sols = Json::array();
        for (const auto& s : *r.solutions) {
            Json row = Json::array();
            for (const auto& v : s) row.push_back(v.str());
            sols.push_back(row);
        }
        j["solutions"] = sols;
    }
    return j;
}

Json to_json(const BoundValue& v) {
    return Json{{"applicable", v.applicable},
                {"satisfied", v.satisfied},
                {"value", format_double(v.value)},
                {"note", v.note}};
}

Json to_json(const BoundReport& r) {
    return Json{{"result", to_json(r.result)},
                {"lower_stmt", to_json(r.lower_stmt)},
                {"lower_proof", to_json(r.lower_proof)},
                {"upper_C1", to_json(r.upper_c1)},
                {"upper_exponent_gap", to_json(r.upper_exponent_gap)}};
}

WeightSplit weight_split_from_json(const Json& j) {
    std::vector<Rat> tau_d, tau_m;
    for (const auto& e : j.at("tau_d")) tau_d.push_back(rat_from_string(e.get<std::string>()));
    for (const auto& e : j.at("tau_m")) tau_m.push_back(rat_from_string(e.get<std::string>()));
    return make_weight_split(std::move(tau_d), std::move(tau_m));
}

Json to_json(const WeightSplit& s) {
    Json td = Json::array(), tm = Json::array();
    for (const auto& t : s.tau_d) td.push_back(rat_to_string(t));
    for (const auto& t : s.tau_m) tm.push_back(rat_to_string(t));
    return Json{{"d", s.d},           {"m", s.m},
                {"tau_d", td},        {"tau_m", tm},
                {"tau_m_sum_ok", s.tau_m_sum_ok}, {"total_sum_ok", s.total_sum_ok},
                {"all_above_one", s.all_above_one}};
}

} // namespace padic
