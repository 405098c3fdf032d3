"""Middle-cell products of the B2 and I2(5) Soergel tables, modulo the longest element."""
B2_COLS = ["s","ts","sts","t","st","tst"]
B2 = {
 "s":   ["2 s","sts + s","2 sts","st","2 st","st"],
 "ts":  ["2 ts","2 ts","2 ts","tst + t","2 tst + 2 t","tst + t"],
 "sts": ["2 sts","sts + s","2 s","st","2 st","st"],
 "t":   ["ts","2 ts","ts","2 t","tst + t","2 tst"],
 "st":  ["sts + s","2 sts + 2 s","sts + s","2 st","2 st","2 st"],
 "tst": ["ts","2 ts","ts","2 tst","tst + t","2 t"],
}
I5_COLS = ["s","ts","sts","tsts","t","st","tst","stst"]
I5 = {
 "s":    ["2 s","sts + s","2 sts","sts","st","2 st","stst + st","2 stst"],
 "ts":   ["2 ts","tsts + 2 ts","2 tsts + 2 ts","tsts + ts","tst + t","2 tst + 2 t","2 tst + t","2 tst"],
 "sts":  ["2 sts","2 sts + s","2 sts + 2 s","sts + s","stst + st","2 stst + 2 st","stst + 2 st","2 st"],
 "tsts": ["2 tsts","tsts + ts","2 ts","ts","tst","2 tst","tst + t","2 t"],
 "t":    ["ts","2 ts","tsts + ts","2 tsts","2 t","tst + t","2 tst","tst"],
 "st":   ["sts + s","2 sts + 2 s","2 sts + s","2 sts","2 st","stst + 2 st","2 stst + 2 st","stst + st"],
 "tst":  ["tsts + ts","2 tsts + 2 ts","tsts + 2 ts","2 ts","2 tst","2 tst + t","2 tst + 2 t","tst + t"],
 "stst": ["sts","2 sts","sts + s","2 s","2 stst","stst + st","2 st","st"],
}
