#ifndef HGM_TEST_FIXTURES_HPP
#define HGM_TEST_FIXTURES_HPP

// Reference data for the two worked example pairs: the degree-4 symplectic
// pair (0,0,1/3,2/3), (1/2,1/2,1/4,3/4) and the degree-5 orthogonal pair
// (1/2,1/12,5/12,7/12,11/12), (0,1/6,1/6,5/6,5/6).

#include "hgm/presentation.hpp"

namespace hgm::fixtures {

struct Sp4Example {
    std::string alpha = "0,0,1/3,2/3";
    std::string beta = "1/2,1/2,1/4,3/4";
    QMatrix A = matrixOfLongs({{0, 0, 0, -1}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}});
    QMatrix B = matrixOfLongs({{0, 0, 0, -1}, {1, 0, 0, -2}, {0, 1, 0, -2}, {0, 0, 1, -2}});
    QMatrix C = matrixOfLongs({{1, 0, 0, -3}, {0, 1, 0, -2}, {0, 0, 1, -3}, {0, 0, 0, 1}});
    // alternating form with the (1,2) entry scaled to 1
    QMatrix omega = parseMatrix("0 1 -2/3 1/3\n-1 0 1 -2/3\n2/3 -1 0 1\n-1/3 2/3 -1 0\n");
    QMatrix P = parseMatrix("1 -3 4 8/3\n-3/7 -2 23 0\n0 -3 22 1\n0 0 -1 0\n");
    QMatrix omegaStd = parseMatrix("0 0 0 1/21\n0 0 8/3 0\n0 -8/3 0 0\n-1/21 0 0 0\n");
    QMatrix E1 = matrixOfLongs({{1, 0, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    QMatrix E2 = matrixOfLongs({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}});
    QMatrix E3 = matrixOfLongs(
        {{1, 168, -1176, -56}, {0, 64, -441, -21}, {0, 9, -62, -3}, {0, 0, 0, 1}});
    QMatrix E7 = matrixOfLongs({{1, 0, 0, 1008}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    QMatrix E8 = matrixOfLongs({{1, 3024, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, -54}, {0, 0, 0, 1}});
    QMatrix E9 = matrixOfLongs({{1, 0, -3024, 0}, {0, 1, 0, -54}, {0, 0, 1, 0}, {0, 0, 0, 1}});

    std::vector<std::pair<std::string, std::string>> slp = {
        {"G", "B^3 A^2 B^2 A B^2"},
        {"E1", "P^-1 C P"},
        {"E2", "P^-1 G C G^-1 P"},
        {"E3", "P^-1 A^-1 C A P"},
        {"E4", "E1^7 E3 E1^-7"},
        {"E5", "E2^-9 E4"},
        {"E6", "E1 E5 E1^-1"},
        {"E7", "E5 E6 E5^-1 E6^-1"},
        {"E8", "E5^18 E7"},
        {"E9", "E7^161 E8 E6^-18"},
    };
};

struct O5Example {
    std::string alpha = "1/2,1/12,5/12,7/12,11/12";
    std::string beta = "0,1/6,1/6,5/6,5/6";
    // the theorem states the shifted pair; shifting by 1/2 lands on the above
    std::string alphaShifted = "0,1/12,5/12,7/12,11/12";
    std::string betaShifted = "1/2,1/3,1/3,2/3,2/3";
    QMatrix A = matrixOfLongs({{0, 0, 0, 0, -1},
                               {1, 0, 0, 0, -1},
                               {0, 1, 0, 0, 1},
                               {0, 0, 1, 0, 1},
                               {0, 0, 0, 1, -1}});
    QMatrix B = matrixOfLongs({{0, 0, 0, 0, 1},
                               {1, 0, 0, 0, -3},
                               {0, 1, 0, 0, 5},
                               {0, 0, 1, 0, -5},
                               {0, 0, 0, 1, 3}});
    QMatrix C = matrixOfLongs({{1, 0, 0, 0, -4},
                               {0, 1, 0, 0, 6},
                               {0, 0, 1, 0, -4},
                               {0, 0, 0, 1, 2},
                               {0, 0, 0, 0, -1}});
    // symmetric form with the (1,1) entry scaled to -19/9
    QMatrix Q = parseMatrix(
        "-19/9 -17/9 -10/9 1/9 8/9\n"
        "-17/9 -19/9 -17/9 -10/9 1/9\n"
        "-10/9 -17/9 -19/9 -17/9 -10/9\n"
        "1/9 -10/9 -17/9 -19/9 -17/9\n"
        "8/9 1/9 -10/9 -17/9 -19/9\n");
    QMatrix q = matrixOfLongs({{-1, -2, -3, -1, 3},
                               {-2, -1, -2, -3, -1},
                               {-3, -2, -1, -2, -3},
                               {-1, -3, -2, -1, -2},
                               {3, -1, -3, -2, -1}});
    QMatrix P = parseMatrix(
        "1 0 0 0 -1/2\n-4 -1 0 -3 -1\n8 3 -1 4 2\n-5 -2 1 2 1/2\n0 0 -1 -5 -2\n");
    QMatrix Qstd = matrixOfLongs({{0, 0, 0, 0, 1},
                                  {0, 0, 0, -1, 0},
                                  {0, 0, -1, 0, 0},
                                  {0, -1, 0, 0, 0},
                                  {1, 0, 0, 0, 0}});
    QMatrix a = parseMatrix(
        "-2 -1/2 -1 -5 -3/2\n2 0 4 14 4\n-2 -1 1 -2 -1\n3 1 1 7 5/2\n-4 -1 -4 -20 -7\n");
    QMatrix b = parseMatrix(
        "-2 -1/2 -2 -10 -7/2\n2 0 4 14 4\n-2 -1 1 -2 -1\n3 1 1 7 5/2\n-4 -1 -2 -10 -3\n");
    QMatrix E3 = matrixOfLongs({{1, 0, 2, 10, 2},
                                {0, 1, 0, 0, 10},
                                {0, 0, 1, 0, 2},
                                {0, 0, 0, 1, 0},
                                {0, 0, 0, 0, 1}});
    QMatrix E7 = matrixOfLongs({{1, 72, -36, 0, 648},
                                {0, 1, 0, 0, 0},
                                {0, 0, 1, 0, -36},
                                {0, 0, 0, 1, 72},
                                {0, 0, 0, 0, 1}});
    QMatrix E8 = matrixOfLongs({{1, 72, 0, 180, 12960},
                                {0, 1, 0, 0, 180},
                                {0, 0, 1, 0, 0},
                                {0, 0, 0, 1, 72},
                                {0, 0, 0, 0, 1}});
    QMatrix E13 = matrixOfLongs({{1, 0, 0, 96, 0},
                                 {0, 1, 0, 0, 96},
                                 {0, 0, 1, 0, 0},
                                 {0, 0, 0, 1, 0},
                                 {0, 0, 0, 0, 1}});
    QMatrix E16 = matrixOfLongs({{1, 0, 1824, 0, 1663488},
                                 {0, 1, 0, 0, 0},
                                 {0, 0, 1, 0, 1824},
                                 {0, 0, 0, 1, 0},
                                 {0, 0, 0, 0, 1}});

    std::vector<std::pair<std::string, std::string>> slp = {
        {"a", "P^-1 A P"},   {"b", "P^-1 B P"},
        {"c", "b a^-1"},     {"E1", "b^-1 a b a^-1"},
        {"E2", "E1 c"},      {"E3", "E2 b^3 E2^-1 b^-3"},
        {"r", "b a^-6 b^-1"},{"E4", "c E3 c"},
        {"E5", "c r c"},     {"E6", "E4 E5 E4^-1 E5^-1"},
        {"E7", "c E6 c"},    {"E8", "E7 E3^18"},
        {"c1", "a^-1 b"},    {"d", "c1 b^6 c1"},
        {"p", "a b^-6 a^-1"},{"E9", "b E2 b^-1 E2^-1 c"},
        {"E10", "c d c p"},  {"E11", "c E10 c"},
        {"E12", "c E9 c E3^-2"}, {"E13", "E11 E12 E11 E12"},
        {"E14", "E8 E13^-2 E3"}, {"E15", "E14^48 E13"},
        {"E16", "E7^-48 E15"},
    };
};

} // namespace hgm::fixtures

#endif
