// pipeline: grouping (seed 1)
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a_1, int n_1)
{
  int64_t v_1 = 0;
  int v_2 = -2147483648;
  int v_3 = 0;
  int v_4 = 0;
  int v_5 = 0;
  while (v_5 < n_1)
  {
    int const el_6 = a_1[v_5];
    int const t_7 = v_4;
    if ((el_6 >= 48) && (el_6 <= 57))
    {
      v_4 = (10 * t_7) + (el_6 - 48);
    }
    else
    {
      v_4 = 0;
      int const t_8 = v_3;
      int const t_9 = t_8 + t_7;
      if (el_6 == 44)
      {
        v_3 = t_9;
      }
      else
      {
        v_3 = 0;
        int const t_10 = v_2;
        int const t_11 = (t_10 < t_9 ? t_9 : t_10);
        if (el_6 == 124)
        {
          v_2 = t_11;
        }
        else
        {
          v_2 = -2147483648;
          v_1 = v_1 + t_11;
        }
      }
    }
    v_5++;
  }
  return v_1;
}
