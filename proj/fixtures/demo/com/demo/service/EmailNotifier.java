package com.demo.service;

import com.demo.model.Address;
import com.demo.model.Member;
import java.util.ArrayList;
import java.util.List;

public class EmailNotifier implements Notifier {
    private final List<String> outbox = new ArrayList<>();
    private final String sender;

    public EmailNotifier(String sender) {
        this.sender = sender;
    }

    @Override
    public boolean send(Member to, String message) {
        Address a = to.getAddress();
        if (a == null || message == null || message.isBlank()) {
            return false;
        }
        outbox.add(sender + " -> " + to.getName() + " (" + a.getCity() + "): " + message);
        return true;
    }

    public List<String> outbox() {
        return outbox;
    }
}
