"""
From shot counts to a depth certificate
=======================================

A number-resolved measurement of N = 100 atoms, repeated 1000 times. The
lower Clopper-Pearson bound on the twin Fock population has to clear
p_{100,50} = 50/99 before depth 100 is certified.
"""

from dickedepth import certify, parse_record

for hits in (500, 520, 540, 560, 600):
    record = parse_record(f"# N=100 shots=1000\nr,count\n50,{hits}\n")
    report = certify(record, 50, confidence=0.95)
    print(f"{hits}/1000  CI=[{report.ci_lower:.4f}, {report.ci_upper:.4f}]  "
          f"threshold={report.threshold_used:.4f}  {report.verdict.value}")

# Neighbouring bins help only if the window threshold stays low enough.
record = parse_record("# N=100 shots=1000\n49,180\n50,600\n51,190\n")
report = certify(record, (49, 50, 51))
print("window 49-51:", report.verdict.value, report.notes)

# Under white noise the report also says whether the 2-RDM alone would show entanglement.
report = certify(parse_record("# N=100 shots=1000\n50,560\n"), 50, noise_assumption="white")
print(report.notes)
