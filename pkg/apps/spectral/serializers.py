from rest_framework import serializers


class SpectralResultSerializer(serializers.Serializer):
    rho = serializers.FloatField()
    x = serializers.SerializerMethodField()
    residual = serializers.FloatField()
    iterations = serializers.IntegerField()
    converged = serializers.BooleanField()

    def get_x(self, obj):
        return [float(value) for value in obj.x]


class CheckReportSerializer(serializers.Serializer):
    """Per-check {name, verdict, max_residual}, nested for composite checks"""

    name = serializers.CharField()
    verdict = serializers.SerializerMethodField()
    max_residual = serializers.FloatField()
    detail = serializers.CharField(allow_blank=True)
    data = serializers.DictField()
    checks = serializers.SerializerMethodField()

    def get_verdict(self, obj):
        return obj.verdict.value

    def get_checks(self, obj):
        return CheckReportSerializer(obj.checks, many=True).data
