package com.demo.service;

import com.demo.model.Member;

public class SmsNotifier implements Notifier {
    private int sent;
    private final int limit;

    public SmsNotifier(int limit) {
        this.limit = limit;
    }

    @Override
    public boolean send(Member to, String message) {
        if (sent >= limit) {
            return false;
        }
        String text = message.length() > 160 ? message.substring(0, 157) + "..." : message;
        System.out.println("SMS to " + to.getName() + ": " + text);
        sent++;
        return true;
    }

    public int getSent() {
        return sent;
    }
}
