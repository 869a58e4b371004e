#include <nlohmann/json.hpp>

#include "hypermu/blowup.hpp"

namespace hypermu {

namespace {

using nlohmann::json;

json point_to_json(const ExtendedPoint& p) {
    if (p.is_infinity()) return json("iinf");
    return json::array({p.value().real(), p.value().imag()});
}

ExtendedPoint point_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "iinf") return ExtendedPoint::infinity();
        throw DomainError("unknown point literal: " + j.get<std::string>());
    }
    return ExtendedPoint::classify({j.at(0).get<double>(), j.at(1).get<double>()});
}

} // namespace

std::string to_json(const KPoint& k) {
    json j;
    j["z1"] = point_to_json(k.z1);
    j["z2"] = point_to_json(k.z2);
    j["q"] = {k.q1, k.q2};
    j["lambda"] = {k.lambda.lambda().real(), k.lambda.lambda().imag()};
    j["r1"] = k.first.r1;
    j["omega"] = {k.first.omega1, k.first.omega2};
    if (k.second) {
        j["r2"] = k.second->r2;
        j["eta"] = {{k.second->eta1.real(), k.second->eta1.imag()},
                    {k.second->eta2.real(), k.second->eta2.imag()}};
    }
    return j.dump();
}

KPoint kpoint_from_json(const std::string& text) {
    const json j = json::parse(text);
    const ExtendedPoint z1 = point_from_json(j.at("z1"));
    const ExtendedPoint z2 = point_from_json(j.at("z2"));
    const double q1 = j.at("q").at(0).get<double>();
    const double q2 = j.at("q").at(1).get<double>();
    const SpectralParam sp(
        Complex(j.at("lambda").at(0).get<double>(), j.at("lambda").at(1).get<double>()));
    FirstBlowup first;
    first.r1 = j.at("r1").get<double>();
    first.omega1 = j.at("omega").at(0).get<double>();
    first.omega2 = j.at("omega").at(1).get<double>();
    std::optional<SecondBlowup> second;
    if (j.contains("eta")) {
        SecondBlowup s;
        s.r2 = j.value("r2", 0.0);
        s.eta1 = {j.at("eta").at(0).at(0).get<double>(), j.at("eta").at(0).at(1).get<double>()};
        s.eta2 = {j.at("eta").at(1).at(0).get<double>(), j.at("eta").at(1).at(1).get<double>()};
        second = s;
    }
    if (z1.is_interior() && z2.is_interior()) return KPoint::from_interior(z1, z2, q1, q2, sp);
    return KPoint::boundary(z1, z2, q1, q2, sp, first, second);
}

} // namespace hypermu
