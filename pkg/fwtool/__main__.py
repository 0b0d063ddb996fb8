from fwtool.fwtool import start

start()
