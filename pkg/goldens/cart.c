// pipeline: cart (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1, const int * a_2, int n_2)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n_1)
  {
    int const el_3 = a_1[v_2];
    int v_4 = 0;
    while (v_4 < n_2)
    {
      int const el_5 = a_2[v_4];
      int const t_6 = el_3 * el_5;
      v_1 = v_1 + t_6;
      v_4++;
    }
    v_2++;
  }
  return v_1;
}
