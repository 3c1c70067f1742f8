/* Handwritten baseline: sum over one array. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1)
{
    int64_t sum = 0;
    for (int i = 0; i < n1; i++)
        sum += a1[i];
    return sum;
}
