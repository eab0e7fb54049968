# Driving the command line tool as an IR pipeline stage.
import json
import subprocess
import sys

text = "Kitoblarim bor-yap-siz. Dadamlar bajartirilmayaptimi? xyz123\n"

def uzstem(*args, stdin=text):
    return subprocess.run([sys.executable, "-m", "uzstem", *args], input=stdin,
                          capture_output=True, text=True)

print(uzstem("stem").stdout)
print(uzstem("analyze").stdout)

# json lines carry the same fields as the tsv columns
for line in uzstem("analyze", "--format", "json").stdout.splitlines()[:2]:
    print(json.loads(line))

# every reading, ranked
print(uzstem("analyze", "--all", stdin="olma\n").stdout)

print(uzstem("validate").stdout)
print(uzstem("export", "7").stdout)

r = uzstem("export", "99")
print(r.returncode, r.stderr.strip())
