/* Handwritten baseline: two nested iterators advanced in lockstep:
 * (a1 x a2 with x*y) zipped with (a2 x a1 with x-y). */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int64_t sum = 0;
    if (n1 == 0 || n2 == 0)
        return 0;
    int i1 = 0, j1 = 0, i2 = 0, j2 = 0;
    while (i1 < n1 && i2 < n2) {
        sum += (a1[i1] * a2[j1]) + (a2[i2] - a1[j2]);
        j1++;
        if (j1 >= n2) {
            j1 = 0;
            i1++;
        }
        j2++;
        if (j2 >= n1) {
            j2 = 0;
            i2++;
        }
    }
    return sum;
}
