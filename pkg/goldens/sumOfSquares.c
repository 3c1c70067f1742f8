// pipeline: sumOfSquares (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n_1)
  {
    int const el_3 = a_1[v_2];
    int const t_4 = el_3 * el_3;
    v_1 = v_1 + t_4;
    v_2++;
  }
  return v_1;
}
