/* Handwritten baseline: seven chained multiplications, written fused. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1)
{
    int64_t sum = 0;
    for (int i = 0; i < n1; i++) {
        int item1 = a1[i];
        sum += item1 * 1 * 2 * 3 * 4 * 5 * 6 * 7;
    }
    return sum;
}
