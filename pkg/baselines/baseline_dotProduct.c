/* Handwritten baseline: dot product truncated at the shorter array. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int n = n1 < n2 ? n1 : n2;
    int64_t sum = 0;
    for (int i = 0; i < n; i++)
        sum += a1[i] * a2[i];
    return sum;
}
