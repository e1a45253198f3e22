#pragma once

// Reference data tables used by the verification suites: the smallest
// primitive roots for d < 100, the certified values of tilde_g(d)^2 for
// every prime d = 1 mod 3 up to 1000, and the sets S(d) of qudit counts
// that admit exact 3-designs from balanced magic ensembles. The library
// recomputes all of these; the suites assert agreement.

#include <array>
#include <utility>
#include <vector>

namespace qdl::reference {

inline const std::vector<std::pair<int, int>>& primitive_roots_below_100() {
    static const std::vector<std::pair<int, int>> table = {
        {3, 2},  {5, 2},  {7, 3},  {11, 2}, {13, 2}, {17, 3}, {19, 2}, {23, 5},
        {29, 2}, {31, 3}, {37, 2}, {41, 6}, {43, 3}, {47, 5}, {53, 2}, {59, 2},
        {61, 2}, {67, 2}, {71, 7}, {73, 5}, {79, 3}, {83, 2}, {89, 3}, {97, 5}};
    return table;
}

// (d, tilde_g(d)^2) for every prime d = 1 mod 3 with d <= 1000.
inline const std::vector<std::pair<int, int>>& tilde_g_squared() {
    static const std::vector<std::pair<int, int>> table = {
        {7, 1},     {13, 25},   {19, 49},   {31, 16},   {37, 121},  {43, 64},   {61, 1},    {67, 25},
        {73, 49},   {79, 289},  {97, 361},  {103, 169}, {109, 4},   {127, 400}, {139, 529}, {151, 361},
        {157, 196}, {163, 625}, {181, 49},  {193, 529}, {199, 121}, {211, 169}, {223, 784}, {229, 484},
        {241, 289}, {271, 841}, {277, 676}, {283, 1024},{307, 256}, {313, 1225},{331, 1},   {337, 25},
        {349, 1369},{367, 1225},{373, 169}, {379, 841}, {397, 1156},{409, 961}, {421, 361}, {433, 4},
        {439, 784}, {457, 100}, {463, 529}, {487, 625}, {499, 1024},{523, 1849},{541, 841}, {547, 1},
        {571, 961}, {577, 121}, {601, 676}, {607, 2401},{613, 2209},{619, 289}, {631, 1849},{643, 1600},
        {661, 2401},{673, 1369},{691, 64},  {709, 2809},{727, 1936},{733, 2500},{739, 256}, {751, 1681},
        {757, 841}, {769, 2401},{787, 961}, {811, 3136},{823, 25},  {829, 49},  {853, 1225},{859, 169},
        {877, 3481},{883, 2209},{907, 361}, {919, 2704},{937, 3721},{967, 1681},{991, 3721},{997, 100}};
    return table;
}

// One exact-design class: the primes sharing the same S(d), whether the set
// is all of N except 2, and the explicit members otherwise.
struct ExactDesignClass {
    std::vector<int> primes;
    bool all_but_two;
    std::vector<int> elements;  // members of S(d); for all_but_two, within 1..30
};

inline const std::vector<ExactDesignClass>& exact_design_classes() {
    static const std::vector<ExactDesignClass> table = {
        {{7, 31, 61, 67, 73, 109, 181, 199, 211, 307, 331, 337, 373, 421, 433, 457, 547, 577, 619,
          691, 739, 823, 829, 859, 907, 997},
         true,
         {}},
        {{37, 79, 97, 127, 139, 163, 223, 271, 283, 313, 349, 367, 523, 607, 613, 661, 709, 733, 769,
          811, 877, 937, 991},
         false,
         {1}},
        {{13, 19, 151, 193, 229, 277, 379, 397, 409, 439, 499, 631, 643, 673, 727, 751, 883, 919, 967},
         false,
         {1, 3}},
        {{103, 541, 571}, false, {1, 3, 6}},
        {{43}, false, {1, 3, 4, 6}},
        {{853}, false, {1, 3, 4, 6, 9}},
        {{157, 487}, false, {1, 3, 4, 6, 9, 12}},
        {{787}, false, {1, 3, 4, 6, 7, 9, 12, 15}},
        {{241}, false, {1, 3, 4, 6, 7, 9, 12, 15, 18}},
        {{463}, false, {1, 3, 4, 6, 7, 9, 10, 12, 15, 18, 21, 24}},
        {{601}, false, {1, 3, 4, 6, 7, 9, 10, 12, 15, 18, 21, 24, 27}},
        {{757}, false, {1, 3, 4, 6, 7, 9, 10, 12, 15, 18, 21, 24, 27, 30}}};
    return table;
}

} // namespace qdl::reference
