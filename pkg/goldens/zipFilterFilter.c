// pipeline: zipFilterFilter (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1, const int * a_2, int n_2)
{
  int64_t v_1 = 0;
  int v_2 = 0;
  int v_3 = 0;
  while ((v_2 < n_1) && (v_3 < n_2))
  {
    int const el_4 = a_2[v_3];
    if (el_4 > 5)
    {
      bool v_5 = true;
      while (v_5 && (v_2 < n_1))
      {
        int const el_6 = a_1[v_2];
        if (el_6 > 7)
        {
          v_5 = false;
          v_1 = v_1 + (el_6 + el_4);
        }
        v_2++;
      }
    }
    v_3++;
  }
  return v_1;
}
