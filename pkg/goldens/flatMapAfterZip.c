// pipeline: flatMapAfterZip (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1, const int * a_2, int n_2)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  while ((v_2 < n_1) && (v_3 < n_1))
  {
    int const el_4 = a_1[v_3];
    int const el_5 = a_1[v_2];
    int v_6 = 0;
    while (v_6 < n_2)
    {
      int const el_7 = a_2[v_6];
      int const t_8 = (el_5 + el_4) * el_7;
      v_1 = v_1 + t_8;
      v_6++;
    }
    v_2++;
    v_3++;
  }
  return v_1;
}
