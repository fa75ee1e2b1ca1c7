#include "core/forecast_series.hpp"

#include "core/format.hpp"

namespace burstcast {

std::string forecast_to_csv(const ForecastSeries& f) {
    std::string out = "week,actual,point,lower,upper,model\n";
    for (const auto& p : f.points) {
        out += std::to_string(p.week);
        out += ',';
        out += format_number(p.actual);
        out += ',';
        if (p.defined) {
            out += format_number(p.point);
            out += ',';
            out += format_number(p.lower);
            out += ',';
            out += format_number(p.upper);
        } else {
            out += ",,";
        }
        out += ',';
        out += f.model;
        out += '\n';
    }
    return out;
}

}  // namespace burstcast
