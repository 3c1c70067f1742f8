/* Handwritten baseline: zip of a flat-mapped stream with the first array;
 * the zip truncates after n1 pairs. */
#include <stdint.h>

int64_t bench_entry(const int *a1, int n1, const int *a2, int n2)
{
    int64_t sum = 0;
    int k = 0;
    for (int i = 0; i < n1 && k < n1; i++) {
        int x = a1[i];
        for (int j = 0; j < n2 && k < n1; j++) {
            sum += (x + a2[j]) + a1[k];
            k++;
        }
    }
    return sum;
}
