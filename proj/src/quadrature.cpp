#include "polyvem/quadrature.hpp"

#include <cmath>

namespace polyvem {

namespace {

QuadratureRule make_triangle_rule(int degree) {
    QuadratureRule rule;
    auto push3 = [&rule](double a, double w) {
        const double b = 1.0 - 2.0 * a;
        rule.points.push_back({{b, a, a}, w});
        rule.points.push_back({{a, b, a}, w});
        rule.points.push_back({{a, a, b}, w});
    };
    auto push6 = [&rule](double a, double b, double w) {
        const double c = 1.0 - a - b;
        rule.points.push_back({{a, b, c}, w});
        rule.points.push_back({{a, c, b}, w});
        rule.points.push_back({{b, a, c}, w});
        rule.points.push_back({{b, c, a}, w});
        rule.points.push_back({{c, a, b}, w});
        rule.points.push_back({{c, b, a}, w});
    };
    switch (degree) {
        case 1:
            rule.points.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0});
            break;
        case 2:
            push3(1.0 / 6.0, 1.0 / 3.0);
            break;
        case 4:
            push3(0.445948490915965, 0.223381589678011);
            push3(0.091576213509771, 0.109951743655322);
            break;
        case 6:
            push3(0.249286745170910, 0.116786275726379);
            push3(0.063089014491502, 0.050844906370207);
            push6(0.310352451033785, 0.053145049844816, 0.082851075618374);
            break;
        default:
            throw Unsupported("no triangle quadrature rule of degree " + std::to_string(degree));
    }
    return rule;
}

QuadratureRule make_segment_rule(int npoints) {
    QuadratureRule rule;
    auto push = [&rule](double t, double w) { rule.points.push_back({{t, 0.0, 0.0}, w}); };
    switch (npoints) {
        case 1:
            push(0.5, 1.0);
            break;
        case 2: {
            const double d = 0.5 / std::sqrt(3.0);
            push(0.5 - d, 0.5);
            push(0.5 + d, 0.5);
            break;
        }
        case 3: {
            const double d = 0.5 * std::sqrt(3.0 / 5.0);
            push(0.5 - d, 5.0 / 18.0);
            push(0.5, 8.0 / 18.0);
            push(0.5 + d, 5.0 / 18.0);
            break;
        }
        case 4: {
            const double a = 0.5 * std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double b = 0.5 * std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double wa = (18.0 + std::sqrt(30.0)) / 72.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 72.0;
            push(0.5 - a, wa);
            push(0.5 + a, wa);
            push(0.5 - b, wb);
            push(0.5 + b, wb);
            break;
        }
        default:
            throw Unsupported("no segment quadrature rule with " + std::to_string(npoints) + " points");
    }
    return rule;
}

} // namespace

const QuadratureRule& triangle_rule(int degree) {
    static const QuadratureRule deg1 = make_triangle_rule(1);
    static const QuadratureRule deg2 = make_triangle_rule(2);
    static const QuadratureRule deg4 = make_triangle_rule(4);
    static const QuadratureRule deg6 = make_triangle_rule(6);
    switch (degree) {
        case 1: return deg1;
        case 2: return deg2;
        case 4: return deg4;
        case 6: return deg6;
        default: throw Unsupported("no triangle quadrature rule of degree " + std::to_string(degree));
    }
}

const QuadratureRule& segment_rule(int npoints) {
    static const QuadratureRule n1 = make_segment_rule(1);
    static const QuadratureRule n2 = make_segment_rule(2);
    static const QuadratureRule n3 = make_segment_rule(3);
    static const QuadratureRule n4 = make_segment_rule(4);
    switch (npoints) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
        case 4: return n4;
        default: throw Unsupported("no segment quadrature rule with " + std::to_string(npoints) + " points");
    }
}

} // namespace polyvem
