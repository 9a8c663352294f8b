#include "fpent/plot_schema.hpp"

#include <set>
#include <stdexcept>

#include "fpent/numfmt.hpp"

namespace fpent {

Panel parse_panel(std::string_view text) {
    if (text == "scale") return Panel::scale;
    if (text == "precision") return Panel::precision;
    if (text == "multidist") return Panel::multidist;
    if (text == "binsize") return Panel::binsize;
    throw std::invalid_argument("unknown panel '" + std::string(text) + "' (scale, precision, multidist, binsize)");
}

const char* to_string(Panel p) noexcept {
    switch (p) {
        case Panel::scale: return "scale";
        case Panel::precision: return "precision";
        case Panel::multidist: return "multidist";
        case Panel::binsize: return "binsize";
    }
    return "?";
}

std::vector<std::string> panel_columns(Panel p) {
    switch (p) {
        case Panel::scale:
            return {"dist", "swept_value", "exponent_bits", "exact_H", "approx_H_s", "p_overflow", "p_underflow"};
        case Panel::precision: return {"dist", "precision", "exponent_bits", "exact_H", "approx_H_s"};
        case Panel::multidist: return {"dist", "swept_value", "exact_H", "approx_H_s"};
        case Panel::binsize: return {"value", "width", "smooth_width"};
    }
    return {};
}

void check_panel_schema(const CsvTable& t, Panel p) {
    const auto cols = panel_columns(p);
    t.require_columns(cols);
    if (t.rows.empty()) throw std::invalid_argument(std::string(to_string(p)) + " panel: no data rows");
    for (const auto& c : cols) {
        if (c == "dist") continue;
        const std::size_t k = t.column(c);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            try {
                parse_double(t.rows[r][k]);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument(std::string(to_string(p)) + " panel: column '" + c + "' row " +
                                            std::to_string(r + 1) + " is not a number");
            }
        }
    }
}

}  // namespace fpent
