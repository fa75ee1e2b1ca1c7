#include "bssm/model.hpp"

#include "core/format.hpp"

namespace burstcast {

std::string PosteriorSamples::to_csv() const {
    std::string out = "chain,draw,alpha,phi,sigma_w,shape_r\n";
    for (std::size_t i = 0; i < n_draws(); ++i) {
        out += std::to_string(chain_id[i]);
        out += ',';
        out += std::to_string(draw_id[i]);
        out += ',';
        out += format_number(alpha[i]);
        out += ',';
        out += format_number(phi[i]);
        out += ',';
        out += format_number(sigma_w[i]);
        out += ',';
        out += format_number(shape_r[i]);
        out += '\n';
    }
    return out;
}

}  // namespace burstcast
