#include "serialize.hpp"

#include <cstdio>

namespace expsum {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json to_json(const ExpSumResult& r, const std::string& f_id) {
    nlohmann::json j;
    if (!f_id.empty()) j["f"] = f_id;
    j["N"] = r.N;
    j["u"] = r.u;
    j["re"] = format_double(r.value.real());
    j["im"] = format_double(r.value.imag());
    j["magnitude"] = format_double(r.magnitude);
    j["err"] = format_double(r.abs_error_bound);
    j["method"] = method_name(r.method);
    j["terms"] = r.term_count;
    return j;
}

nlohmann::json to_json(const NewtonData& nd) {
    nlohmann::json j;
    j["support"] = nd.support;
    j["hull_vertices"] = nd.hull_vertices;
    j["sigma"] = rational_str(nd.sigma);
    j["kappa"] = nd.kappa;
    j["verdict"] = verdict_name(nd.nondegenerate);
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : nd.diagonal_faces) {
        nlohmann::json jf;
        std::vector<std::string> k;
        for (const auto& x : f.functional) k.push_back(x.str());
        jf["functional"] = k;
        jf["tight"] = f.tight;
        jf["dim"] = f.dim;
        faces.push_back(jf);
    }
    j["diagonal_faces"] = faces;
    return j;
}

nlohmann::json to_json(const LocusData& ld) {
    nlohmann::json j;
    j["d"] = ld.d;
    j["s"] = ld.s_estimate;
    j["s_from_override"] = ld.s_from_override;
    j["crit_bound"] = ld.crit_bound.str();
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& e : ld.evidence) {
        ev.push_back({{"q", e.q}, {"count", e.count}, {"slope", format_double(e.slope)}});
    }
    j["evidence"] = ev;
    return j;
}

nlohmann::json to_json(const PoincareData& pd) {
    nlohmann::json j;
    j["p"] = pd.p;
    j["n"] = pd.nvars;
    std::vector<std::string> counts;
    for (const auto& c : pd.counts) counts.push_back(c.str());
    j["counts"] = counts;
    j["recurrence_found"] = pd.recurrence_found;
    j["unstable"] = pd.unstable;
    std::vector<std::string> rec, num, den;
    for (const auto& c : pd.recurrence) rec.push_back(rational_str(c));
    for (const auto& c : pd.numerator) num.push_back(rational_str(c));
    for (const auto& c : pd.denominator) den.push_back(rational_str(c));
    j["recurrence"] = rec;
    j["numerator"] = num;
    j["denominator"] = den;
    nlohmann::json poles = nlohmann::json::array();
    for (const auto& pole : pd.poles) {
        nlohmann::json jp;
        jp["t0"] = format_double(pole.t0);
        if (pole.t0_exact) jp["t0_exact"] = rational_str(*pole.t0_exact);
        jp["order"] = pole.order;
        jp["trivial"] = pole.trivial;
        jp["T0_abs"] = format_double(pole.T0_abs);
        poles.push_back(jp);
    }
    j["poles"] = poles;
    return j;
}

nlohmann::json to_json(const BoundVerdict& v) {
    nlohmann::json j;
    j["bound"] = bound_name(v.bound.name);
    j["f_id"] = v.f_id;
    j["N"] = v.N;
    j["u_max"] = v.u;
    j["predicted"] = format_double(v.predicted);
    j["observed"] = format_double(v.observed);
    j["ratio"] = format_double(v.ratio);
    j["pass"] = v.pass;
    return j;
}

std::string sums_csv_header() { return "f,N,u,re,im,magnitude,err,method,terms"; }

std::string sums_csv_row(const std::string& f_id, const ExpSumResult& r) {
    std::string row = f_id;
    row += "," + std::to_string(r.N);
    row += "," + std::to_string(r.u);
    row += "," + format_double(r.value.real());
    row += "," + format_double(r.value.imag());
    row += "," + format_double(r.magnitude);
    row += "," + format_double(r.abs_error_bound);
    row += ",";
    row += method_name(r.method);
    row += "," + std::to_string(r.term_count);
    return row;
}

std::string verdicts_csv_header() { return "bound,f_id,N,u_max,predicted,observed,ratio,pass"; }

std::string verdicts_csv_row(const BoundVerdict& v) {
    std::string row = bound_name(v.bound.name);
    row += "," + v.f_id;
    row += "," + std::to_string(v.N);
    row += "," + std::to_string(v.u);
    row += "," + format_double(v.predicted);
    row += "," + format_double(v.observed);
    row += "," + format_double(v.ratio);
    row += v.pass ? ",1" : ",0";
    return row;
}

}  // namespace expsum
