#include "lsfem/quadrature.hpp"

#include <string>

#include "lsfem/errors.hpp"

namespace lsfem {

QuadRule quad_rule(int degree)
{
    switch (degree) {
    case 1:
        return {1, {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {1.0}};
    case 2:
        return {2,
                {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}},
                {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
    case 4: {
        constexpr double a = 0.44594849091596488632;
        constexpr double wa = 0.22338158967801146570;
        constexpr double b = 0.09157621350977074346;
        constexpr double wb = 0.10995174365532186764;
        return {4,
                {{a, a, 1.0 - 2.0 * a},
                 {a, 1.0 - 2.0 * a, a},
                 {1.0 - 2.0 * a, a, a},
                 {b, b, 1.0 - 2.0 * b},
                 {b, 1.0 - 2.0 * b, b},
                 {1.0 - 2.0 * b, b, b}},
                {wa, wa, wa, wb, wb, wb}};
    }
    default:
        throw InputError("quad_rule: unsupported degree " + std::to_string(degree) + " (expected 1, 2 or 4)");
    }
}

} // namespace lsfem
