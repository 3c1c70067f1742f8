// pipeline: flatMapTake (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1, const int * a_2, int n_2)
{
  int64_t v_1 = 0;
  int v_2 = n_1;
  int v_3 = 0;
  while ((v_3 < n_1) && (v_2 > 0))
  {
    int const el_4 = a_1[v_3];
    int v_5 = 0;
    while ((v_5 < n_2) && (v_2 > 0))
    {
      int const el_6 = a_2[v_5];
      int const t_7 = el_4 * el_6;
      v_2--;
      v_1 = v_1 + t_7;
      v_5++;
    }
    v_3++;
  }
  return v_1;
}
