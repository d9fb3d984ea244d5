// Generated by tests/oracles/make_oracles.py; do not edit.
#pragma once

namespace oracle {

struct NormQuantileCase { double p; double x; };
inline constexpr NormQuantileCase kNormQuantile[] = {
    {1.0000000000000000251e-300, -37.047096299361199237},
    {9.9999999999999994515e-21, -9.2623400897984075796},
    {0.000010000000000000000818, -4.2648907939228246102},
    {0.025000000000000001388, -1.9599639845400542118},
    {0.2999999999999999889, -0.52440051270804081597},
    {0.5, 0.0},
    {0.9000000000000000222, 1.2815515655446005935},
    {0.99999899999999997124, 4.7534243088170877657},
};

struct BvnCdfCase { double h; double k; double r; double p; };
inline constexpr BvnCdfCase kBvnCdf[] = {
    {0.0, 0.0, 0.5, 0.33333333333333333333},
    {-1.1999999999999999556, 0.69999999999999995559, -0.5999999999999999778, 0.041014421748693167539},
    {1.5, 2.0, 0.9000000000000000222, 0.93072725351264014564},
    {-2.5, -3.0, 0.2999999999999999889, 0.00007663409334977281071},
    {0.2999999999999999889, -0.4000000000000000222, -0.94999999999999995559, 0.031079372423291591799},
    {-4.0, 1.0, 0.98999999999999999112, 0.000031671241833119921254},
};

struct FrankTauCase { double theta; double tau; };
inline constexpr FrankTauCase kFrankTau[] = {
    {-8.0, -0.60261965155110751861},
    {-1.0, -0.11001853644899310567},
    {0.5, 0.055417254324844237473},
    {3.0, 0.30724695943072378439},
    {10.0, 0.66577738627197841025},
    {35.0, 0.89108549899379005302},
};

struct ClaytonCase { double u; double v; double theta; double cdf; double pdf; double h; };
inline constexpr ClaytonCase kClayton[] = {
    {0.2999999999999999889, 0.5999999999999999778, 2.0, 0.27854300726557778361, 0.86251178924388686902, 0.80041094041832698943},
    {0.050000000000000002776, 0.9000000000000000222, 0.69999999999999995559, 0.049336092425565610676, 0.24187057976240615922, 0.97753218640484436571},
    {0.80000000000000004441, 0.2000000000000000111, 9.0, 0.19999992660686210566, 0.000047683383353945083236, 9.5367081675449809413e-7},
    {0.010000000000000000208, 0.020000000000000000416, 4.0, 0.0098495812332845320717, 13.63263864178327518, 0.92701941891637400078},
};

struct GaussLegendre15Case { double node; double weight; };
inline constexpr GaussLegendre15Case kGaussLegendre15[] = {
    {0.0060037409897573112971, 0.015376620998059323253},
    {0.031363303799647024306, 0.035183023744054034432},
    {0.075896708294786396909, 0.053579610233585886481},
    {0.13779113431991496519, 0.069785338963076953833},
    {0.21451391369573058476, 0.083134602908496890716},
    {0.3029243264612183073, 0.093080500007780939131},
    {0.39940295300128275668, 0.099215742663555622771},
    {0.5, 0.10128912096278044896},
    {0.60059704699871729883, 0.099215742663555622771},
    {0.69707567353878174821, 0.093080500007780939131},
    {0.78548608630426941524, 0.083134602908496890716},
    {0.86220886568008503481, 0.069785338963076953833},
    {0.9241032917052136586, 0.053579610233585886481},
    {0.96863669620035297569, 0.035183023744054034432},
    {0.9939962590102426887, 0.015376620998059323253},
};

struct BetaQuantileCase { double pi; double gamma; double u; double x; double logit_x; };
inline constexpr BetaQuantileCase kBetaQuantile[] = {
    {0.9000000000000000222, 0.089999999999999996669, 0.5, 0.92560614936456634829, 2.5210755338361233627},
    {0.05999999999999999778, 0.36999999999999999556, 0.010000000000000000208, 1.3612023182475770174e-20, -45.743333493146671121},
    {0.11000000000000000056, 0.14999999999999999445, 0.99899999999999999911, 0.69704213991611537383, 0.83325214771636225114},
    {0.77000000000000001776, 0.080000000000000001665, 9.9999999999999995475e-7, 0.14651223555939707301, -1.7622222622391579352},
    {0.5, 0.5, 0.2999999999999999889, 0.20610737385376342131, -1.348550955253633277},
    {0.9000000000000000222, 0.089999999999999996669, 0.99999999900000002828, 0.99999999986144114238, 22.699725915670430007},
    {0.2000000000000000111, 0.5999999999999999778, 1.0000000000000000209e-8, 2.9269365373288357034e-60, -137.08114925398258814},
};

struct TrinomialCase { double y0; double y1; double y2; double p0; double p1; double p2; double logpmf; };
inline constexpr TrinomialCase kTrinomial[] = {
    {3.0, 40.0, 2.0, 0.10000000000000000555, 0.8499999999999999778, 0.050000000000000002776, -3.0815897314192971904},
    {0.0, 12.0, 0.0, 0.2000000000000000111, 0.69999999999999995559, 0.10000000000000000555, -4.2800993272647893082},
    {17.0, 5.0, 9.0, 0.5, 0.2000000000000000111, 0.2999999999999999889, -3.6686159903080899803},
};

struct IndepBetaStudyCase { double tn; double fp; double ne_neg; double fn; double tp; double ne_pos; double pi1; double pi2; double pi3; double pi4; double g1; double g2; double g3; double g4; double logpmf; };
inline constexpr IndepBetaStudyCase kIndepBetaStudy[] = {
    {40.0, 5.0, 3.0, 2.0, 50.0, 4.0, 0.9000000000000000222, 0.77000000000000001776, 0.05999999999999999778, 0.11000000000000000056, 0.089999999999999996669, 0.080000000000000001665, 0.36999999999999999556, 0.14999999999999999445, -9.3141192400731184113},
    {120.0, 30.0, 10.0, 8.0, 60.0, 2.0, 0.80000000000000004441, 0.69999999999999995559, 0.050000000000000002776, 0.080000000000000001665, 0.2000000000000000111, 0.10000000000000000555, 0.2999999999999999889, 0.25, -13.044489765956606718},
    {7.0, 1.0, 0.0, 0.0, 9.0, 0.0, 0.5999999999999999778, 0.5999999999999999778, 0.10000000000000000555, 0.10000000000000000555, 0.4000000000000000222, 0.4000000000000000222, 0.4000000000000000222, 0.4000000000000000222, -3.8218959772502564669},
};

inline constexpr double kKendallX[] = {1.0, 2.0, 2.0, 3.5, 0.2, 4.0, 4.0, 1.5};
inline constexpr double kKendallY[] = {0.3, 0.1, 0.9, 0.9, -1.0, 2.0, 1.0, 0.3};
inline constexpr double kKendallTauB = 0.7692307692307694;

}  // namespace oracle
